"""Main entry point for the mutation fan command-line tools."""
import argparse
import logging
import sys

import config
from commands.runner import CommandConfig, CommandRunner


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mutfan",
        description="Mutation maps, bounded-depth B-coherence, quasi-lamination fans and shear coordinates.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--depth", type=int, help="Mutation search depth (default depends on the rank)")
    common.add_argument("--out", help="Write output here instead of stdout")
    common.add_argument("--format", choices=["json", "csv", "svg"], default="json")
    common.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    common.add_argument("--expect-holds", action="store_true", help="Exit 1 when a verdict is refuted")

    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("mutate", parents=[common], help="Mutate a matrix along a sequence")
    p.add_argument("--matrix", required=True)
    p.add_argument("--seq", default="")

    p = sub.add_parser("eta", parents=[common], help="Apply the mutation map along a sequence")
    p.add_argument("--matrix", required=True)
    p.add_argument("--seq", default="")
    p.add_argument("--vec")
    p.add_argument("--csv", help="Batch mode: one vector per CSV line")

    p = sub.add_parser("separate", parents=[common], help="Search for a separating sequence")
    p.add_argument("--matrix", required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)

    p = sub.add_parser("coherent", parents=[common], help="Check a weighted family for B-coherence")
    p.add_argument("--matrix", required=True)
    p.add_argument("--family", required=True)

    p = sub.add_parser("fan", parents=[common], help="Build a fan truncation, or plot one")
    p.add_argument("action", nargs="?", choices=["build", "plot"], default="build")
    p.add_argument("--matrix")
    p.add_argument("--rays")
    p.add_argument("--annulus", dest="annulus_n", type=int, help="Use the annulus curves with |n| <= N as rays")
    p.add_argument("--fan")
    p.add_argument("--svg")
    p.add_argument("--csv")

    p = sub.add_parser("plot", parents=[common], help="Plot a rank 3 fan truncation")
    p.add_argument("--fan", required=True)
    p.add_argument("--svg")
    p.add_argument("--csv")

    p = sub.add_parser("shear", parents=[common], help="Shear coordinates of a curve")
    p.add_argument("--tri", required=True)
    p.add_argument("--curve", required=True)

    p = sub.add_parser("annulus", parents=[common], help="Shear vector of an annulus curve")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int, default=0)

    p = sub.add_parser("nulltangle", parents=[common], help="Check a tangle for nullity up to depth")
    p.add_argument("--matrix", required=True)
    p.add_argument("--tangle", required=True)

    p = sub.add_parser("gvector", parents=[common], help="g-vector of a cluster variable")
    p.add_argument("--matrix", required=True)
    p.add_argument("--seq", default="")
    p.add_argument("--k", type=int, required=True)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=config.LOG_LEVEL, format='%(asctime)s - %(levelname)s - %(message)s')
    args = build_parser().parse_args(argv)
    fields = set(CommandConfig.__dataclass_fields__)
    options = {key: value for key, value in vars(args).items() if key in fields}
    return CommandRunner(CommandConfig(**options)).run()


if __name__ == '__main__':
    sys.exit(main())
