"""
Command-line interface.

    heckesign [global flags] <command> [command flags]

Every command writes deterministic report files into --out and prints a
short summary on stdout. Exit status is 0 when the run succeeds (and
every enabled check passes), 1 when an enabled check fails or the two
evaluations of lambda(p^nu) disagree, and 2 for usage or data errors.

"""
import argparse
import logging
import math
import sys
from pathlib import Path

from heckesign import __version__
from heckesign.angles import angle, angle_sequence, rational_approximation, relation_search
from heckesign.cli.config import RunConfig, load_config_file
from heckesign.cli.verify import format_results, verify_all
from heckesign.equidist import (
    pair_st_gof,
    prime_sign_density,
    prime_sign_sequence,
    sign_product_proportion_nu,
    sin_box_proportion_check,
    weyl_orbit_stats,
)
from heckesign.errors import HeckesignError, PathDisagreementError
from heckesign.halfint import epsilon_lower_bound, get_halfint_preset, halfint_sign_density, load_halfint_spec
from heckesign.measures import epsilon_interval_union, product_measure, st_measure
from heckesign.newforms import resolve_form
from heckesign.reports import write_csv, write_json
from heckesign.tally import SignTally


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_ERROR = 2

SIGN_CLASSES = ("pos", "neg", "pos-pos", "pos-neg", "neg-pos", "neg-neg")


def build_parser():
    # flags default to SUPPRESS so that only flags given explicitly override the config file
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config", help="JSON file of run parameters (flags override it)")
    common.add_argument("--cache-dir", dest="cache_dir", help="coefficient cache directory")
    common.add_argument("--out", help="output directory for reports")
    common.add_argument("--no-build", dest="build", action="store_false", help="fail instead of computing missing tables")
    common.add_argument("--workers", type=int, help="processes used for point counting")
    common.add_argument("--check", action="store_true", help="apply the acceptance tolerances and set the exit status")
    common.add_argument("-v", "--verbose", dest="log_level", action="store_const", const=logging.DEBUG)
    common.add_argument("-q", "--quiet", dest="log_level", action="store_const", const=logging.ERROR)

    parser = argparse.ArgumentParser(
        prog="heckesign",
        description="Sign changes and equidistribution of Hecke eigenvalues of newforms.",
        parents=[common],
        argument_default=argparse.SUPPRESS,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    def command(name, help):
        return sub.add_parser(name, help=help, parents=[common], argument_default=argparse.SUPPRESS)

    def pair(p):
        p.add_argument("--f1", help="first form: preset label or table file")
        p.add_argument("--f2", help="second form: preset label or table file")

    p = command("coeffs", "table of p, a_p, lambda(p), theta_p")
    p.add_argument("--form")
    p.add_argument("--limit", type=int)

    p = command("angles", "Sato-Tate angles with single-angle rationality screens")
    p.add_argument("--form")
    p.add_argument("--limit", type=int)
    p.add_argument("--height", type=int)
    p.add_argument("--tol", type=float)

    p = command("relation-screen", "search for an integer relation between two angles at p")
    pair(p)
    p.add_argument("--p", type=int)
    p.add_argument("--height", type=int)
    p.add_argument("--tol", type=float)

    p = command("measure", "Sato-Tate mass of sign unions and their products")
    p.add_argument("--nu", type=int, nargs="+")
    p.add_argument("--class", dest="sign_class", choices=SIGN_CLASSES)
    p.add_argument("--eps", dest="measure_eps", type=float, nargs="+", help="shrink the unions to sin((nu + 1) theta) beyond eps")

    p = command("weyl", "orbit of the two angles modulo 1")
    pair(p)
    p.add_argument("--p", type=int)
    p.add_argument("--x", type=int)
    p.add_argument("--box", type=float, nargs=4, metavar=("U1", "V1", "U2", "V2"))

    p = command("nu-density", "sign proportion of lambda_1(p^nu) lambda_2(p^nu) over nu <= x")
    pair(p)
    p.add_argument("--p", type=int)
    p.add_argument("--x", type=int)
    p.add_argument("--height", type=int)
    p.add_argument("--tol", type=float)

    p = command("prime-density", "sign densities of lambda_1(p^nu) lambda_2(p^nu) over primes")
    pair(p)
    p.add_argument("--nu", type=int, nargs="+")
    p.add_argument("--limit", type=int)
    p.add_argument("--window", type=int, help="also write densities over the last W primes")

    p = command("pair-st", "pair Sato-Tate histogram and goodness of fit")
    pair(p)
    p.add_argument("--limit", type=int)
    p.add_argument("--bins", type=int)

    p = command("halfint-density", "sign densities of synthesized half-integral coefficients")
    p.add_argument("--h1", help="half-integral preset label or JSON spec file")
    p.add_argument("--h2", help="half-integral preset label or JSON spec file")
    p.add_argument("--nu", type=int, nargs="+")
    p.add_argument("--limit", type=int)
    p.add_argument("--eps", type=float, nargs="+")

    command("verify-all", "run the acceptance suite")
    return parser


def resolve_config(args):
    """
    RunConfig from parsed arguments: defaults < --config file < flags.
    """
    flags = {k: v for k, v in vars(args).items() if k != "log_level"}
    file_values = load_config_file(flags["config"]) if "config" in flags else {}
    return RunConfig.from_sources(file_values, flags).validate()


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=getattr(args, "log_level", logging.WARNING),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        config = resolve_config(args)
        logger.debug("resolved config %s", config)
        return COMMANDS[config.command](config)
    except PathDisagreementError as e:
        print(f"heckesign: check failed: {e}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except (HeckesignError, ValueError, TypeError, OSError) as e:
        print(f"heckesign: error: {e}", file=sys.stderr)
        return EXIT_ERROR


def run(config):
    """
    Run the command named by config.command and return the exit status.
    """
    return COMMANDS[config.validate().command](config)


def _report(config, body):
    return {"version": __version__, "config": config.as_dict(), **body}


def _status(passed):
    return EXIT_OK if passed else EXIT_CHECK_FAILED


def _pair_tables(config, limit):
    spec1, spec2 = resolve_form(config.f1), resolve_form(config.f2)
    return config.table(spec1, limit), config.table(spec2, limit)


def cmd_coeffs(config):
    table = config.table(resolve_form(config.form), config.limit)
    angles = angle_sequence(table)
    rows = zip(table.primes.tolist(), table.raw, table.lambdas.tolist(), angles.thetas.tolist())
    path = write_csv(
        config.out_path / f"coeffs_{table.spec.label}_{config.limit}.csv",
        ["p", "a_p", "lambda", "theta"],
        rows,
    )
    print(f"{len(table)} primes written to {path}")
    return EXIT_OK


def cmd_angles(config):
    table = config.table(resolve_form(config.form), config.limit)
    rows = []
    for p, theta in angle_sequence(table):
        rational = rational_approximation(theta / math.pi, config.height, config.tol)
        rows.append((p, theta, "" if rational is None else f"{rational[0]}/{rational[1]}"))
    path = write_csv(config.out_path / f"angles_{table.spec.label}_{config.limit}.csv", ["p", "theta", "theta_over_pi"], rows)
    flagged = sum(1 for row in rows if row[2])
    print(f"{len(rows)} angles written to {path}; {flagged} close to a rational multiple of pi")
    return EXIT_OK


def _relation(config, t1, t2):
    theta_1, theta_2 = (angle(t.lambda_at(config.p)) for t in (t1, t2))
    return relation_search(theta_1, theta_2, config.height, config.tol)


def cmd_relation_screen(config):
    t1, t2 = _pair_tables(config, config.p)
    screen = _relation(config, t1, t2)
    write_json(config.out_path / "relation_screen.json", _report(config, {"screen": screen}))
    print(screen.describe())
    return EXIT_OK


def cmd_measure(config):
    values = []
    for nu in config.nu:
        for eps in config.measure_eps:
            unions = {
                "pos": epsilon_interval_union(nu, eps),
                "neg": epsilon_interval_union(nu, eps, primed=True),
            }
            parts = config.sign_class.split("-")
            if len(parts) == 1:
                value = st_measure(unions[parts[0]])
            else:
                value = product_measure(unions[parts[0]], unions[parts[1]])
            values.append({"nu": nu, "eps": eps, "class": config.sign_class, "measure": value})
            print(f"nu={nu} eps={eps!r} {config.sign_class}: {value!r}")
    write_json(config.out_path / "measure.json", _report(config, {"measures": values}))
    return EXIT_OK


def cmd_weyl(config):
    t1, t2 = _pair_tables(config, config.p)
    theta_1, theta_2 = (angle(t.lambda_at(config.p)) for t in (t1, t2))
    u1, v1, u2, v2 = config.box
    box = ((u1, v1), (u2, v2))
    stats = weyl_orbit_stats(theta_1, theta_2, config.x, boxes=[box])
    quadrant = sin_box_proportion_check(theta_1, theta_2, 0.0, 1.0, config.x, config.height, config.tol)
    area = (v1 - u1) * (v2 - u2)
    passed = abs(stats.proportion(box) - area) <= config.nu_tolerance
    write_json(config.out_path / "weyl.json", _report(config, {
        "orbit": stats,
        "sin_box": quadrant._asdict(),
        "box_area": area,
        "passed": passed if config.check else None,
    }))
    print(f"box proportion {stats.proportion(box)!r} (area {area!r}), grid discrepancy {stats.discrepancy:.4g}")
    return _status(passed or not config.check)


def cmd_nu_density(config):
    t1, t2 = _pair_tables(config, config.p)
    screen = _relation(config, t1, t2)
    report = sign_product_proportion_nu(t1, t2, config.p, config.x)
    positive = report.densities["positive"]
    passed = not screen.found and abs(positive - 0.5) <= config.nu_tolerance
    write_json(config.out_path / "nu_density.json", _report(config, {
        "screen": screen,
        "report": report,
        "tolerance": config.nu_tolerance,
        "passed": passed if config.check else None,
    }))
    write_csv(
        config.out_path / "nu_density.csv",
        ["class", "count", "density", "nonzero_density"],
        [
            (name, getattr(report, name), report.densities[name], report.nonzero_densities.get(name, ""))
            for name in ("positive", "negative", "zero")
        ],
    )
    print(screen.describe())
    print(f"positive {positive!r}, negative {report.densities['negative']!r}, "
          f"among nonzero {report.nonzero_densities['positive']!r}")
    return _status(passed or not config.check)


def cmd_prime_density(config):
    t1, t2 = _pair_tables(config, config.limit)
    reports = []
    passed = True
    for nu in config.nu:
        report = prime_sign_density(t1, t2, nu, config.limit)
        d = report.densities
        passed &= (
            abs(d["positive"] - 0.5) <= config.density_tolerance
            and abs(d["negative"] - 0.5) <= config.density_tolerance
            and d["zero"] <= config.zero_density_max
        )
        reports.append(report)
        write_csv(
            config.out_path / f"prime_density_nu{nu}.csv",
            ["class", "count", "density"],
            [(name, getattr(report, name), d[name]) for name in ("positive", "negative", "zero")],
        )
        if config.window is not None:
            pairs = prime_sign_sequence(t1, t2, nu, config.limit)
            running = SignTally((sign for _, sign in pairs), config.window, "fixed")
            write_csv(
                config.out_path / f"prime_density_nu{nu}_window{config.window}.csv",
                ["p", "positive", "negative", "zero"],
                ((p,) + counts.densities for (p, _), counts in zip(pairs[config.window - 1:], running)),
            )
        print(f"nu={nu}: positive {d['positive']!r}, negative {d['negative']!r}, zero {d['zero']!r}")
    write_json(config.out_path / "prime_density.json", _report(config, {
        "reports": reports,
        "passed": passed if config.check else None,
    }))
    return _status(passed or not config.check)


def cmd_pair_st(config):
    t1, t2 = _pair_tables(config, config.limit)
    report = pair_st_gof(t1, t2, config.limit, config.bins)
    deviation = report.max_relative_deviation(config.min_expected)
    passed = not deviation > config.deviation_max and all(s <= config.ks_max for s, _ in report.ks)
    write_json(config.out_path / "pair_st.json", _report(config, {
        "report": report,
        "checked_deviation": deviation,
        "passed": passed if config.check else None,
    }))
    write_csv(
        config.out_path / "pair_st_histogram.csv",
        ["i", "j", "observed", "expected"],
        report.histogram.rows(),
    )
    print(f"chi-square {report.chi_square:.4g} on {report.dof} dof (p={report.p_value:.3g}), "
          f"KS {report.ks[0][0]:.4g} / {report.ks[1][0]:.4g}")
    return _status(passed or not config.check)


def _halfint_spec(name):
    path = Path(name)
    if path.suffix == ".json" and path.is_file():
        return load_halfint_spec(path)
    return get_halfint_preset(name)


def cmd_halfint_density(config):
    spec1, spec2 = _halfint_spec(config.h1), _halfint_spec(config.h2)
    t1 = config.table(spec1.underlying, config.limit)
    t2 = config.table(spec2.underlying, config.limit)
    reports = []
    bounds = []
    passed = True
    for nu in config.nu:
        report = halfint_sign_density(spec1, spec2, t1, t2, nu, config.limit)
        passed &= abs(report.densities["positive"] - 0.5) <= config.density_tolerance
        passed &= report.extras["predicate_mismatches"] == 0
        reports.append(report)
        for eps in config.eps:
            bound = epsilon_lower_bound(spec1, spec2, t1, t2, nu, eps, config.limit)
            passed &= bound["counterexamples"] == 0 and bound["inequality_holds"]
            bounds.append(bound)
        print(f"nu={nu}: positive {report.densities['positive']!r}, negative {report.densities['negative']!r}")

    columns = ["nu", "eps", "primes", "positive", "pi_small", "S_eps", "S_eps_primed",
               "limit_bound", "positive_density", "inequality_holds", "counterexamples"]
    write_csv(config.out_path / "epsilon_bounds.csv", columns, ([b[c] for c in columns] for b in bounds))
    write_json(config.out_path / "halfint_density.json", _report(config, {
        "reports": reports,
        "epsilon": bounds,
        "passed": passed if config.check else None,
    }))
    return _status(passed or not config.check)


def cmd_verify_all(config):
    results = verify_all(config, __version__)
    print(format_results(results))
    return _status(all(r.passed for r in results))


COMMANDS = {
    "coeffs": cmd_coeffs,
    "angles": cmd_angles,
    "relation-screen": cmd_relation_screen,
    "measure": cmd_measure,
    "weyl": cmd_weyl,
    "nu-density": cmd_nu_density,
    "prime-density": cmd_prime_density,
    "pair-st": cmd_pair_st,
    "halfint-density": cmd_halfint_density,
    "verify-all": cmd_verify_all,
}
