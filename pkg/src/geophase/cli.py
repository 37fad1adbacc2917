"""``geophase`` command line: single computations and seeded verification suites.

Matrices are JSON nested arrays of ``[re, im]`` pairs.  Every run writes a
versioned JSON report; the exit status is 0 when every identity passes, 1
when any identity fails and 2 on input errors.
"""

import argparse
import json
import sys
import time

import numpy as np

from . import __version__
from . import cocycles as cc
from . import grassmann as gr
from . import phases
from . import rankone as r1
from .errors import GeophaseError, ParseError, ValidationError
from .matfun import dagger

SCHEMA = 1
COMMANDS = ("area", "phase", "cocycle", "verify", "rankone")
DEFAULT_CONFIGS = [(n, m, eps) for (n, m) in [(1, 1), (1, 2), (2, 2), (2, 3)] for eps in (1, -1)]

TOLERANCES = {
    "area_quadrature": 1e-6,
    "phase_area": 1e-12,
    "block_product": 1e-10,
    "alpha_schur": 1e-10,
    "u_zzz": 1e-9,
    "phi_gauss": 1e-10,
    "phase_cocycle": 1e-9,
    "dupont_closed": 1e-12,
    "dupont_quadrature": 1e-5,
    "automorphy": 1e-9,
    "kernel_covariance": 1e-10,
    "gw_2cocycle": 1e-9,
    "gw_2cocycle_mod1": 1e-9,
    "round_trip": 1e-10,
    "section_unitarity": 1e-10,
    "section_inverse": 1e-10,
    "z3_action": 1e-10,
    "rank1_phase_area": 1e-6,
}


# -- JSON matrices -----------------------------------------------------------


def _complex_entry(entry, where):
    if (
        not isinstance(entry, list)
        or len(entry) != 2
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in entry)
    ):
        raise ParseError(f"entry at {where} must be a [re, im] pair of numbers, got {entry!r}")
    return complex(entry[0], entry[1])


def matrix_from_json(data):
    if not isinstance(data, list) or not data:
        raise ParseError("matrix must be a non-empty list of rows")
    rows = []
    width = None
    for i, row in enumerate(data):
        if not isinstance(row, list) or not row:
            raise ParseError(f"row {i} must be a non-empty list")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ParseError(f"ragged matrix: row {i} has {len(row)} entries, expected {width}")
        rows.append([_complex_entry(e, f"row {i}, col {j}") for j, e in enumerate(row)])
    return np.array(rows, dtype=complex)


def parse_matrix_json(text):
    """Parse ``[[[re, im], ...], ...]`` into a complex matrix."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return matrix_from_json(data)


def matrix_to_json(A):
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(A)]


# -- jobs --------------------------------------------------------------------


class Tally:
    """Per-identity worst residual and pass/fail bookkeeping."""

    def __init__(self, tolerances):
        self.tolerances = tolerances
        self.worst = {}
        self.count = {}

    def add(self, name, residual):
        residual = float(residual)
        self.count[name] = self.count.get(name, 0) + 1
        prev = self.worst.get(name, 0.0)
        self.worst[name] = residual if (np.isnan(residual) or residual > prev) else prev
        return residual

    def fail(self, name):
        self.add(name, float("inf"))

    def summary(self):
        out = {}
        for name in sorted(self.worst):
            tol = self.tolerances[name]
            worst = self.worst[name]
            out[name] = {
                "count": self.count[name],
                "max_residual": worst if np.isfinite(worst) else None,
                "tolerance": tol,
                "pass": bool(worst <= tol),
            }
        return out


def _spec_from(manifold, k, shape=None):
    if manifold is None:
        if shape is None:
            raise ValidationError("--manifold is required")
        manifold = (shape[0], shape[1], -1)
    n, m, eps = manifold
    spec = gr.ManifoldSpec(n, m, eps, k)
    if shape is not None and tuple(shape) != (n, m):
        raise ValidationError(f"input matrices are {shape[0]}x{shape[1]}, manifold is {n}x{m}")
    return spec


def _pair_inputs(job):
    mats = [matrix_from_json(x) for x in job["inputs"]]
    if len(mats) != 2:
        raise ValidationError(f"expected two matrices, got {len(mats)}")
    if mats[0].shape != mats[1].shape:
        raise ValidationError("input matrices have different shapes")
    configs = job.get("manifold") or [None]
    spec = _spec_from(configs[0], job["k"], mats[0].shape)
    return gr.GrassmannPoint(spec, mats[0]), gr.GrassmannPoint(spec, mats[1])


def _run_area(job, tally):
    a, b = _pair_inputs(job)
    closed = phases.triangle_area_closed(a, b)
    quad = phases.triangle_area_quadrature(a, b, job["order"])
    res = tally.add("area_quadrature", abs(quad.value - closed.value))
    k = a.spec.weight_k
    return [{
        "area_closed": closed.value,
        "area_quadrature": quad.value,
        "quadrature_est_error": quad.est_error,
        "weighted_area_closed": k * closed.value,
        "residuals": {"area_quadrature": res},
    }]


def _run_phase(job, tally):
    a, b = _pair_inputs(job)
    ov = phases.kernel(a, b)
    closed = phases.triangle_area_closed(a, b)
    unit = phases.normalized_overlap_phase(a, b, 1)
    res = tally.add("phase_area", abs(unit - 2 * phases.ORIENTATION_SIGN * closed.value))
    return [{
        "kernel": [ov.value.real, ov.value.imag],
        "kernel_magnitude": ov.magnitude,
        "kernel_phase": ov.phase,
        "phase_weight_1": unit,
        "area_closed": closed.value,
        "chordal_distance": phases.chordal_distance(a, b),
        "residuals": {"phase_area": res},
    }]


def _run_cocycle(job, tally):
    a, b = _pair_inputs(job)
    rep = cc.phase_report(a, b, job["order"])
    res = {
        "phase_cocycle": tally.add("phase_cocycle", rep.residuals["phase_cocycle"]),
        "dupont_closed": tally.add("dupont_closed", rep.residuals["dupont_closed"]),
        "dupont_quadrature": tally.add("dupont_quadrature", rep.residuals["dupont"]),
        "phi_gauss": tally.add("phi_gauss", abs(rep.phi - cc.gauss_phase(a, b))),
    }
    return [{
        "phi": rep.phi,
        "f": rep.f,
        "c_quadrature": rep.c,
        "c_closed": cc.dupont_cocycle_points(a, b),
        "phase_cocycle_conjugate_residual": rep.residuals["phase_cocycle_conjugate"],
        "residuals": res,
    }]


def _run_rankone(job, tally):
    raw = job["inputs"]
    if len(raw) != 2:
        raise ValidationError("rankone expects two complex numbers")
    space = job.get("space", "sphere")
    weight = job.get("weight", 0.5 if space == "sphere" else 1)
    p, q = (r1.RankOnePoint(_complex_entry(z, f"input {i}"), space, weight) for i, z in enumerate(raw))
    phi = r1.rank1_phase(p, q)
    area = r1.rank1_area(p, q, job["order"])
    res = tally.add("rank1_phase_area", abs(phi - 2 * r1.weight_scale(p) * area))
    return [{"space": space, "weight": weight, "phase": phi, "area": area,
             "residuals": {"rank1_phase_area": res}}]


def _pseudo_unitarity_defect(g):
    I = g.spec.metric_signature()
    return np.linalg.norm(dagger(g.U) @ I @ g.U - I)


def _gw_residual(g1, g2, g3):
    f = cc.gw_cocycle
    return f(g1, g2) + f(g1 @ g2, g3) - f(g2, g3) - f(g1, g2 @ g3)


def verify_case(spec, seed, order):
    """Draw one random instance and return its echo plus every identity residual."""
    rng = np.random.default_rng(seed)
    eps = spec.epsilon
    a, b = gr.random_point(spec, rng), gr.random_point(spec, rng)
    X = gr.random_point(spec, rng)
    gseeds = [int(s) for s in rng.integers(0, 2**62, size=3)]
    g = [gr.random_group_element(spec, s) for s in gseeds]
    res = {}

    closed = phases.triangle_area_closed(a, b)
    res["area_quadrature"] = abs(phases.triangle_area_quadrature(a, b, order).value - closed.value)
    res["phase_area"] = abs(
        phases.normalized_overlap_phase(a, b, 1) - 2 * phases.ORIENTATION_SIGN * closed.value
    )

    bp = cc.block_product(a, b)
    res["block_product"] = np.abs(bp.assemble() - cc.section_product(a, b)).max()
    res["alpha_schur"] = np.abs(cc.gauss_alpha(a, b) - bp.alpha).max()
    Z3 = gr.compose_points(a, b).Z
    direct = np.eye(spec.n) + eps * Z3 @ dagger(Z3)
    res["u_zzz"] = np.abs(cc.gauss_u_squared(a, b) - direct).max()
    phi = cc.multiplicative_phase(a, b)
    res["phi_gauss"] = abs(np.exp(1j * phi) - np.exp(1j * cc.gauss_phase(a, b)))

    s1, s2 = gr.section(a), gr.section(b)
    f = cc.gw_cocycle(s1, s2)
    res["phase_cocycle"] = abs(np.exp(1j * eps * phi) - np.exp(2j * np.pi * f))
    res["dupont_closed"] = abs(f - eps / np.pi * cc.dupont_cocycle_points(a, b))
    res["dupont_quadrature"] = abs(f - eps / np.pi * cc.dupont_cocycle(s1, s2, order))

    J = cc.automorphy_J
    res["automorphy"] = abs(J(g[0] @ g[1], X) - J(g[0], gr.act(g[1], X)) * J(g[1], X))
    # kernel covariance needs both images inside the chart; use sections for eps=+1
    h = g[0] if eps == -1 else s1
    lhs = phases.kernel(gr.act(h, X), gr.act(h, a), 1).value
    rhs = J(h, X) * phases.kernel(X, a, 1).value * np.conj(J(h, a))
    res["kernel_covariance"] = abs(lhs - rhs)
    gw = _gw_residual(*g)
    if eps == -1:
        res["gw_2cocycle"] = abs(gw)
    else:
        # f is only defined modulo integers on the compact group
        res["gw_2cocycle_mod1"] = abs(gw - round(gw))

    B = gr.z_to_b(a)
    res["round_trip"] = np.abs(gr.b_to_z(B).Z - a.Z).max()
    res["section_unitarity"] = _pseudo_unitarity_defect(s1)
    res["section_inverse"] = np.abs(gr.section(-a).U @ s1.U - np.eye(spec.size)).max()
    res["z3_action"] = np.abs(Z3 - gr.act(s1, b).Z).max()

    echo = {
        "seed": int(seed),
        "Z1": matrix_to_json(a.Z),
        "Z2": matrix_to_json(b.Z),
        "X": matrix_to_json(X.Z),
        "group_seeds": gseeds,
    }
    return echo, {k: float(v) for k, v in res.items()}


def _run_verify(job, tally):
    configs = job.get("manifold") or DEFAULT_CONFIGS
    cases = []
    seed = job["seed"] if job["seed"] is not None else 0
    for ci, (n, m, eps) in enumerate(configs):
        spec = gr.ManifoldSpec(n, m, eps, job["k"])
        for trial in range(job["trials"]):
            case_seed = int(np.random.SeedSequence([seed, ci, trial]).generate_state(1)[0])
            entry = {"manifold": [n, m, eps], "trial": trial}
            try:
                echo, res = verify_case(spec, case_seed, job["order"])
            except GeophaseError as exc:
                entry["error"] = f"{type(exc).__name__}: {exc}"
                tally.fail("case_errors")
                cases.append(entry)
                continue
            for name, val in res.items():
                tally.add(name, val)
            entry.update(echo)
            entry["residuals"] = res
            cases.append(entry)
    return cases


RUNNERS = {
    "area": _run_area,
    "phase": _run_phase,
    "cocycle": _run_cocycle,
    "verify": _run_verify,
    "rankone": _run_rankone,
}


def run_job(job):
    """Execute a job dict and return the report dict.

    ``job`` keys: command, manifold (list of (n, m, eps) or None), k, seed,
    trials, order, tolerances, inputs and, for rankone, space/weight.
    """
    if job["command"] not in COMMANDS:
        raise ValidationError(f"unknown command {job['command']!r}")
    if job["trials"] < 1:
        raise ValidationError("trials must be >= 1")
    if job["order"] < 4:
        raise ValidationError("order must be >= 4")
    tolerances = dict(TOLERANCES, case_errors=0.0)
    for key, val in job.get("tolerances", {}).items():
        if key not in TOLERANCES:
            raise ValidationError(f"unknown tolerance key {key!r}")
        tolerances[key] = float(val)
    tally = Tally(tolerances)
    start = time.perf_counter()
    cases = RUNNERS[job["command"]](job, tally)
    identities = tally.summary()
    return {
        "schema": SCHEMA,
        "version": __version__,
        "command": job["command"],
        "input": {
            "manifold": [list(c) for c in job["manifold"]] if job.get("manifold") else None,
            "k": job["k"],
            "seed": job["seed"],
            "trials": job["trials"],
            "order": job["order"],
            "tolerances": {k: tolerances[k] for k in sorted(TOLERANCES)},
            "inputs": job.get("inputs"),
            "space": job.get("space"),
            "weight": job.get("weight"),
        },
        "cases": cases,
        "identities": identities,
        "pass": all(v["pass"] for v in identities.values()),
        "wall_time": time.perf_counter() - start,
    }


# -- argument handling ---------------------------------------------------------


def _manifold_arg(text):
    try:
        n, m, eps = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected n,m,eps, got {text!r}") from None
    return (n, m, eps)


def _tol_arg(text):
    key, sep, val = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected KEY=VAL, got {text!r}")
    try:
        return key, float(val)
    except ValueError:
        raise argparse.ArgumentTypeError(f"tolerance {val!r} is not a number") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def build_parser():
    p = _Parser(prog="geophase", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--manifold", type=_manifold_arg, action="append",
                   help="n,m,eps; repeat for several configurations in verify mode")
    p.add_argument("--k", type=int, default=1, help="extreme-weight parameter")
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--order", type=int, default=phases.DEFAULT_ORDER)
    p.add_argument("--in", dest="infile", help="input JSON file")
    p.add_argument("--out", dest="outfile", help="report path (default stdout)")
    p.add_argument("--tol", type=_tol_arg, action="append", default=[])
    return p


def _load_inputs(path):
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: invalid JSON: {exc}") from exc
    if isinstance(data, list):
        data = {"inputs": data}
    if not isinstance(data, dict) or "inputs" not in data:
        raise ParseError(f"{path}: expected a list of inputs or an object with 'inputs'")
    return data


def dump_report(report):
    return json.dumps(report, indent=2, sort_keys=True, allow_nan=False) + "\n"


def main(argv=None):
    args = build_parser().parse_args(argv)
    job = {
        "command": args.command,
        "manifold": args.manifold,
        "k": args.k,
        "seed": args.seed,
        "trials": args.trials,
        "order": args.order,
        "tolerances": dict(args.tol),
        "inputs": None,
    }
    try:
        if args.command != "verify":
            if not args.infile:
                raise ValidationError(f"{args.command} needs --in FILE.json")
            data = _load_inputs(args.infile)
            job["inputs"] = data["inputs"]
            for key in ("space", "weight"):
                if key in data:
                    job[key] = data[key]
        report = run_job(job)
    except (GeophaseError, OSError) as exc:
        print(f"geophase: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    text = dump_report(report)
    if args.outfile:
        with open(args.outfile, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report["pass"] else 1


if __name__ == "__main__":
    sys.exit(main())
