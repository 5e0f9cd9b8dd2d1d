"""Command-line interface.

Subcommands
-----------
verify   run built-in self-check suites (one [PASS]/[FAIL] line per check)
eval     evaluate a quantity on a grid of points k and emit CSV
ingest   validate a model file and write back its enriched form

Evaluation kinds (``eval --kind``)
----------------------------------
zeta-geom   geodesic-side zeta sum (needs --model, --n)
zeta-spec   spectral-side zeta sum via superposition (needs --model, --n)
selberg     weighted length pairing (needs --model; --classical for the
            classically normalized companion value)
transform   spherical transform of the basic kernel (needs --dim or --model,
            --mu; --mode closed|iterated|quadrature)
beta        superposition coefficients beta(k; m) (needs --k-re, --m-sup)
residues    pole table of the spectral series in a strip (needs --model, --n)

Grids are given by --k-re [--k-re-max --k-re-steps] and --k-im
[--k-im-max --k-im-steps]; rows iterate the imaginary part in the outer
loop and the real part in the inner loop.  All floats are printed with
repr-faithful precision (%.17g).

The environment variable HYPZETA_THREADS (default 1) sets the number of
worker threads used to evaluate grid points.

Exit codes: 0 success; 1 verification failure; 2 usage, model, or domain
error; 3 evaluation refused because a grid point lies within 1e-6 of a
spectral pole (override with --allow-near-pole).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import __version__
from .specfun import DomainError, PoleError
from .transforms import QuadratureResult, spherical_transform_fk
from .verify import SUITES, run_suite
from .zeta import (
    ModelError,
    beta_coeffs,
    min_gamma_pole_distance,
    model_from_dict,
    model_to_dict,
    poles_and_residues,
    r_spec_tail_bound,
    selberg_pair,
    strip_default,
    z_geom,
    z_spec,
)

_NEAR_POLE_TOL = 1e-6


def _fmt(x):
    return format(float(x), ".17g")


def _emit(lines, out_path):
    text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_model(path):
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return model_from_dict(data)


def _grid(args):
    res = _axis(args.k_re, args.k_re_max, args.k_re_steps, "--k-re")
    ims = _axis(args.k_im, args.k_im_max, args.k_im_steps, "--k-im")
    return [complex(re, im) for im in ims for re in res]


def _axis(start, stop, steps, name):
    if start is None:
        raise DomainError(f"{name} is required for this kind")
    if steps < 1:
        raise DomainError(f"{name}-steps must be >= 1")
    if steps == 1:
        return [start]
    if stop is None:
        raise DomainError(f"{name}-max is required when {name}-steps > 1")
    h = (stop - start) / (steps - 1)
    return [start + i * h for i in range(steps)]


def _map_grid(fn, points):
    threads = int(os.environ.get("HYPZETA_THREADS", "1") or "1")
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(fn, points))
    return [fn(k) for k in points]


def _cmd_verify(args):
    name = args.suite
    result = run_suite(name, seed=args.seed)
    if args.json:
        print(json.dumps(result, indent=2))
    else:
        for c in result["checks"]:
            tag = "PASS" if c["passed"] else "FAIL"
            print(
                f"[{tag}] {c['name']}  residual={c['residual']:.3e}  tol={c['tol']:.1e}"
            )
        n_ok = sum(1 for c in result["checks"] if c["passed"])
        print(f"{n_ok}/{len(result['checks'])} checks passed")
    return 0 if result["passed"] else 1


def _cmd_ingest(args):
    model = _load_model(args.model)
    enriched = model_to_dict(model)
    text = json.dumps(enriched, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _near_pole_gate(points, model, allow):
    worst = min(min_gamma_pole_distance(k, model) for k in points)
    if worst < _NEAR_POLE_TOL and not allow:
        print(
            f"error: a grid point lies within {worst:.2e} of a spectral pole; "
            "re-run with --allow-near-pole to proceed",
            file=sys.stderr,
        )
        return False
    return True


def _cmd_eval(args):
    kind = args.kind
    header = "k_re,k_im,value_re,value_im,error_estimate"
    if kind == "beta":
        if args.k_re is None:
            raise DomainError("--k-re is required for kind 'beta'")
        k = complex(args.k_re, args.k_im or 0.0)
        coeffs = beta_coeffs(k, args.m_sup)
        lines = ["m,value_re,value_im"]
        for m, bm in enumerate(coeffs):
            lines.append(f"{m},{_fmt(bm.real)},{_fmt(bm.imag)}")
        _emit(lines, args.out)
        return 0

    if kind == "transform":
        if args.mu is None:
            raise DomainError("--mu is required for kind 'transform'")
        if args.dim is not None:
            dim = args.dim
        elif args.model:
            dim = _load_model(args.model).l
        else:
            raise DomainError("kind 'transform' needs --dim or --model")
        points = _grid(args)

        def one(k):
            val = spherical_transform_fk(k, args.mu, dim, mode=args.mode)
            if isinstance(val, QuadratureResult):
                return val.value, val.error_estimate
            return val, 0.0

        rows = _map_grid(one, points)
        lines = [header]
        for k, (v, err) in zip(points, rows):
            lines.append(
                f"{_fmt(k.real)},{_fmt(k.imag)},{_fmt(v.real)},{_fmt(v.imag)},{_fmt(err)}"
            )
        _emit(lines, args.out)
        return 0

    if not args.model:
        raise DomainError(f"kind {kind!r} requires --model")
    model = _load_model(args.model)

    if kind == "residues":
        if args.n is None:
            raise DomainError("--n is required for kind 'residues'")
        strip = None
        if args.strip_lo is not None or args.strip_hi is not None:
            lo, hi = strip_default(model.l)
            strip = (
                lo if args.strip_lo is None else args.strip_lo,
                hi if args.strip_hi is None else args.strip_hi,
            )
        poles = poles_and_residues(args.n, model, strip=strip)
        lines = ["location_re,location_im,order,residue_re,residue_im"]
        for p in poles:
            lines.append(
                f"{_fmt(p.location.real)},{_fmt(p.location.imag)},{p.order},"
                f"{_fmt(p.residue.real)},{_fmt(p.residue.imag)}"
            )
        _emit(lines, args.out)
        return 0

    points = _grid(args)

    if kind == "selberg":
        def one(k):
            pair = selberg_pair(k, model)
            v = pair["classical_value"] if args.classical else pair["value"]
            return v, 0.0
    elif kind == "zeta-geom":
        if args.n is None:
            raise DomainError("--n is required for kind 'zeta-geom'")

        def one(k):
            return z_geom(k, args.n, model), 0.0
    elif kind == "zeta-spec":
        if args.n is None:
            raise DomainError("--n is required for kind 'zeta-spec'")
        if not _near_pole_gate(points, model, args.allow_near_pole):
            return 3

        def one(k):
            v = z_spec(k, args.n, model, M=args.m_sup, Jmax=args.jmax)
            err = (
                r_spec_tail_bound(k, args.n, model, args.jmax)
                if args.jmax is not None
                else 0.0
            )
            return v, err
    else:
        raise DomainError(f"unknown kind {kind!r}")

    rows = _map_grid(one, points)
    lines = [header]
    for k, (v, err) in zip(points, rows):
        v = complex(v)
        lines.append(
            f"{_fmt(k.real)},{_fmt(k.imag)},{_fmt(v.real)},{_fmt(v.imag)},{_fmt(err)}"
        )
    _emit(lines, args.out)
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="hypzeta",
        description="Zeta functions, spherical transforms, and residues for "
        "real hyperbolic spaces from length-spectrum and eigenvalue data.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run built-in self checks")
    p_verify.add_argument(
        "--suite",
        default="all",
        choices=sorted(SUITES) + ["all"],
        help="which suite to run (default: all)",
    )
    p_verify.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    p_verify.add_argument("--json", action="store_true", help="emit results as JSON")
    p_verify.set_defaults(func=_cmd_verify)

    p_eval = sub.add_parser("eval", help="evaluate a quantity on a grid")
    p_eval.add_argument(
        "--kind",
        required=True,
        choices=["zeta-geom", "zeta-spec", "selberg", "transform", "beta", "residues"],
    )
    p_eval.add_argument("--model", help="path to a model JSON file")
    p_eval.add_argument("--n", type=int, help="eigen record index of the test function")
    p_eval.add_argument("--k-re", type=float, help="real part of k (grid start)")
    p_eval.add_argument("--k-re-max", type=float, help="real part of k (grid end)")
    p_eval.add_argument("--k-re-steps", type=int, default=1)
    p_eval.add_argument("--k-im", type=float, default=0.0, help="imaginary part of k")
    p_eval.add_argument("--k-im-max", type=float)
    p_eval.add_argument("--k-im-steps", type=int, default=1)
    p_eval.add_argument(
        "--m-sup", type=int, default=24, help="superposition order (zeta-spec, beta)"
    )
    p_eval.add_argument("--jmax", type=int, help="truncate the spectral sum at this index")
    p_eval.add_argument("--mu", type=float, help="frequency for kind 'transform'")
    p_eval.add_argument("--dim", type=int, help="space dimension for kind 'transform'")
    p_eval.add_argument(
        "--mode",
        default="closed",
        choices=["closed", "iterated", "quadrature"],
        help="evaluation route for kind 'transform'",
    )
    p_eval.add_argument(
        "--classical",
        action="store_true",
        help="emit the classically normalized pairing value (kind 'selberg')",
    )
    p_eval.add_argument("--strip-lo", type=float, help="strip lower edge (kind 'residues')")
    p_eval.add_argument("--strip-hi", type=float, help="strip upper edge (kind 'residues')")
    p_eval.add_argument(
        "--allow-near-pole",
        action="store_true",
        help="evaluate even when a grid point is within 1e-6 of a pole",
    )
    p_eval.add_argument("--out", help="write output to this file instead of stdout")
    p_eval.set_defaults(func=_cmd_eval)

    p_ingest = sub.add_parser("ingest", help="validate and enrich a model file")
    p_ingest.add_argument("--model", required=True, help="path to a model JSON file")
    p_ingest.add_argument("--out", help="write enriched JSON here instead of stdout")
    p_ingest.set_defaults(func=_cmd_ingest)
    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ModelError, DomainError, PoleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
