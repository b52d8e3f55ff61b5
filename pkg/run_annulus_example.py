import logging
import os
import sys

from utils import annulus, coherence, fan_approx, fan_plot, surface
import config

# Configure logging for this script
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')


def run_annulus_example(depth=10, families_up_to=4):
    logging.info("Starting the annulus walkthrough...")

    T = annulus.annulus_triangulation()
    B = surface.signed_adjacency(T)
    logging.info(f"Signed adjacency matrix: {B.to_lists()}")
    if B != annulus.ANNULUS_MATRIX:
        logging.error("Signed adjacency does not match the expected annulus matrix.")
        return False

    # The seven named curves, by closed form and by their crossing walk
    named = {
        "v1": annulus.AnnulusCurve("1", 0),
        "v2": annulus.AnnulusCurve("2", 0),
        "v3": annulus.AnnulusCurve("3", 0),
        "v4": annulus.AnnulusCurve("4", 0),
        "v+": annulus.AnnulusCurve("+"),
        "v-": annulus.AnnulusCurve("-"),
        "vinf": annulus.AnnulusCurve("inf"),
    }
    ok = True
    for name, curve in named.items():
        walked = surface.shear_coordinates(T, annulus.annulus_curve(curve))
        logging.info(f"{curve.label}: crossings give {walked}, expected {annulus.NAMED_VECTORS[name]}")
        ok = ok and walked == annulus.NAMED_VECTORS[name]

    for n in range(families_up_to + 1):
        for curve in (annulus.AnnulusCurve("1", n), annulus.AnnulusCurve("2", -n),
                      annulus.AnnulusCurve("3", n), annulus.AnnulusCurve("4", -n)):
            walked = surface.shear_coordinates(T, annulus.annulus_curve(curve))
            if walked != annulus.annulus_shear(curve):
                logging.error(f"{curve.label}: crossing walk {walked} disagrees with the closed form")
                ok = False

    cert = coherence.find_separating_sequence(B, annulus.NAMED_VECTORS["v+"], annulus.NAMED_VECTORS["v-"], depth)
    logging.info(f"v+ and v- separated by {cert.to_dict() if cert else None}")

    curves = annulus.annulus_allowable_curves(families_up_to)
    rays = [(c.label, annulus.annulus_shear(c)) for c in curves]
    table = coherence.SignTable(B, [v for _, v in rays], depth)
    index = {label: i for i, (label, _) in enumerate(rays)}
    fan = fan_approx.build_quasilam_fan(
        rays, lambda x, y: table.separation(index[x], index[y]) is None, B.n, parameter=depth
    )
    check = fan_approx.check_fan(fan)
    logging.info(f"Fan with {len(fan.cones)} cones; check: {check}")
    ok = ok and check["ok"]

    plot_path = fan_plot.generate_fan_plot(fan, filename="annulus_fan.svg")
    csv_path = fan_plot.write_projection_csv(fan, os.path.join(config.PLOT_DIR, "annulus_fan.csv"))
    logging.info(f"Plot files: {plot_path}, {csv_path}")

    logging.info("Annulus walkthrough complete." if ok else "Annulus walkthrough found mismatches.")
    return ok


if __name__ == '__main__':
    sys.exit(0 if run_annulus_example() else 1)
