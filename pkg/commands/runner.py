"""Command handlers behind the command-line entry point, one method per subcommand."""
import logging
import sys
from dataclasses import dataclass

from utils import annulus, coherence, fan_approx, fan_plot, formats, mutation_maps, surface, tangles
from utils.exchange_core import mutate_along, mutate_extended
from utils.formats import FormatError

SUBCOMMANDS = ("mutate", "eta", "separate", "coherent", "fan", "shear", "annulus", "nulltangle", "plot", "gvector")

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_INPUT_ERROR = 2


@dataclass
class CommandConfig:
    """Parsed arguments for one command run."""
    subcommand: str
    action: str = None
    matrix: str = None
    seq: str = ""
    vec: str = None
    csv: str = None
    a: str = None
    b: str = None
    family: str = None
    rays: str = None
    annulus_n: int = None
    fan: str = None
    svg: str = None
    tri: str = None
    curve: str = None
    n: int = 0
    tangle: str = None
    k: int = None
    depth: int = None
    out: str = None
    format: str = "json"
    seed: int = None
    expect_holds: bool = False

    def validate(self):
        if self.subcommand not in SUBCOMMANDS:
            raise FormatError(f"unknown subcommand {self.subcommand!r}")
        if self.depth is not None and self.depth < 0:
            raise FormatError("depth must be nonnegative", field="--depth")
        required = {
            "mutate": ["matrix"],
            "eta": ["matrix"],
            "separate": ["matrix", "a", "b"],
            "coherent": ["matrix", "family"],
            "shear": ["tri", "curve"],
            "annulus": ["family"],
            "nulltangle": ["matrix", "tangle"],
            "plot": ["fan"],
            "gvector": ["matrix", "k"],
        }.get(self.subcommand, [])
        if self.subcommand == "fan" and self.action == "plot":
            required = ["fan"]
        elif self.subcommand == "fan" and self.rays is None and self.annulus_n is None:
            raise FormatError("fan needs --rays or --annulus", field="--rays")
        if self.subcommand == "eta" and self.vec is None and self.csv is None:
            raise FormatError("eta needs --vec or --csv", field="--vec")
        for name in required:
            if getattr(self, name) is None:
                raise FormatError(f"{self.subcommand} needs --{name.replace('_', '-')}", field=f"--{name}")


class CommandRunner:
    def __init__(self, config: CommandConfig, stdout=None):
        self.config = config
        self.stdout = stdout or sys.stdout

    def emit(self, text: str):
        if self.config.out:
            with open(self.config.out, "w", encoding="utf-8", newline="\n") as f:
                f.write(text)
            logging.info(f"Wrote {self.config.out}")
        else:
            self.stdout.write(text)

    def _matrix(self):
        return formats.parse_matrix(formats.load_json(self.config.matrix))

    def _seq(self):
        return formats.parse_sequence(self.config.seq or "", "--seq")

    def _verdict_exit(self, verdict) -> int:
        if self.config.expect_holds and not verdict.holds:
            return EXIT_REFUTED
        return EXIT_OK

    def mutate(self) -> int:
        data = formats.load_json(self.config.matrix)
        if isinstance(data, dict) and "coeff_rows" in data:
            final = formats.parse_extended_matrix(data)
            for k in self._seq():
                final = mutate_extended(final, k)
        else:
            final = mutate_along(formats.parse_matrix(data), self._seq())[-1]
        self.emit(formats.dump_json(formats.matrix_to_dict(final)))
        return EXIT_OK

    def eta(self) -> int:
        B = self._matrix()
        seq = self._seq()
        if self.config.csv:
            images = mutation_maps.eta_images(B, seq, formats.read_vector_csv(self.config.csv))
            if self.config.format == "csv":
                self.emit(formats.vectors_to_csv(images))
            else:
                self.emit(formats.dump_json([formats.format_vector(v) for v in images]))
            return EXIT_OK
        image = mutation_maps.eta(B, seq, formats.parse_vector(self.config.vec, "--vec"))
        self.emit(formats.dump_json(formats.format_vector(image)))
        return EXIT_OK

    def separate(self) -> int:
        B = self._matrix()
        a = formats.parse_vector(self.config.a, "--a")
        b = formats.parse_vector(self.config.b, "--b")
        cert = coherence.find_separating_sequence(B, a, b, self.config.depth)
        if cert is None:
            depth = coherence._resolve_depth(B, self.config.depth)
            self.emit(formats.dump_json({"depth": depth, "separated": False}))
            return EXIT_REFUTED if self.config.expect_holds else EXIT_OK
        out = cert.to_dict()
        out["separated"] = True
        self.emit(formats.dump_json(out))
        return EXIT_OK

    def coherent(self) -> int:
        B = self._matrix()
        family = formats.parse_family(formats.load_json(self.config.family))
        verdict = coherence.is_b_coherent_up_to_depth(B, family, self.config.depth)
        self.emit(formats.dump_json(verdict.to_dict()))
        return self._verdict_exit(verdict)

    def _fan_rays(self):
        B = self._matrix() if self.config.matrix else annulus.ANNULUS_MATRIX
        if self.config.annulus_n is not None:
            curves = annulus.annulus_allowable_curves(self.config.annulus_n)
            return B, [(c.label, annulus.annulus_shear(c)) for c in curves]
        return B, formats.parse_rays(formats.load_json(self.config.rays))

    def fan(self) -> int:
        if self.config.action == "plot":
            return self.plot()
        B, rays = self._fan_rays()
        table = coherence.SignTable(B, [v for _, v in rays], self.config.depth)
        index = {ray_id: i for i, (ray_id, _) in enumerate(rays)}
        compat = lambda x, y: table.separation(index[x], index[y]) is None
        fan = fan_approx.build_quasilam_fan(rays, compat, B.n, parameter=table.depth)
        check = fan_approx.check_fan(fan)
        out = fan.to_dict()
        out["check"] = check
        self.emit(formats.dump_json(out))
        return EXIT_REFUTED if self.config.expect_holds and not check["ok"] else EXIT_OK

    def plot(self) -> int:
        fan = formats.parse_fan(formats.load_json(self.config.fan))
        svg = self.config.svg or (self.config.out if self.config.format == "svg" else None)
        path = fan_plot.generate_fan_plot(fan, filepath=svg)
        if path is None:
            raise FormatError("nothing to plot: the fan needs rank 3 rays", field="--fan")
        written = {"svg": path}
        if self.config.csv:
            written["csv"] = fan_plot.write_projection_csv(fan, self.config.csv)
        if self.config.out and self.config.out == svg:
            return EXIT_OK
        self.emit(formats.dump_json(written))
        return EXIT_OK

    def shear(self) -> int:
        T = formats.parse_triangulation(formats.load_json(self.config.tri))
        curve = formats.parse_curve(formats.load_json(self.config.curve))
        self.emit(formats.dump_json(formats.format_vector(surface.shear_coordinates(T, curve))))
        return EXIT_OK

    def annulus(self) -> int:
        curve = formats.parse_annulus_curve({"family": self.config.family, "n": self.config.n}, "--family")
        self.emit(formats.dump_json(formats.format_vector(annulus.annulus_shear(curve))))
        return EXIT_OK

    def nulltangle(self) -> int:
        B = self._matrix()
        tangle = formats.parse_tangle(formats.load_json(self.config.tangle))
        verdict = tangles.null_check_up_to_depth(B, tangle, self.config.depth)
        out = verdict.to_dict()
        out["shear"] = formats.format_vector(tangles.tangle_shear(B, tangle))
        self.emit(formats.dump_json(out))
        return self._verdict_exit(verdict)

    def gvector(self) -> int:
        B = self._matrix()
        g = mutation_maps.g_vector(B, self._seq(), self.config.k)
        self.emit(formats.dump_json(formats.format_vector(g)))
        return EXIT_OK

    def run(self) -> int:
        """Runs the configured subcommand and returns the process exit status."""
        try:
            self.config.validate()
            handler = getattr(self, self.config.subcommand)
            return handler()
        except (FormatError, ValueError, IndexError) as e:
            logging.error(f"{self.config.subcommand} failed: {e}")
            print(f"error: {e}", file=sys.stderr)
            return EXIT_INPUT_ERROR


def run(config: CommandConfig) -> int:
    return CommandRunner(config).run()
