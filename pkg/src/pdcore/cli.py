"""pdcore command line: invariants, core, verify, lemma-lab, fitting.

Reports are JSON by default (sorted keys, no timing unless --timing) so
that identical input and seed give byte-identical output.  Exit codes:
0 success, 2 input error, 3 sampling exhausted, 4 internal cross-check
failure.
"""

import argparse
import json
import sys
import time
from contextlib import contextmanager

from . import __version__
from .core import (SamplingError, core_formula, core_sampled, default_r_max, derived_seed,
                   general_element_lab, membership_witness, module_invariants,
                   sample_minimal_reduction, verify_corollary_linear, verify_integrally_closed,
                   verify_theorem)
from .groebner import INFINITE_HEIGHT, height
from .inputs import InputError, load_module_file, module_to_dict, powers_exponents
from .rees import EmbeddingError, ReesCrossCheckError, analytic_spread, build_rees

EXIT_OK, EXIT_INPUT, EXIT_SAMPLING, EXIT_CROSS_CHECK = 0, 2, 3, 4


class _Partial(Exception):
    def __init__(self, exc, partial):
        super().__init__(str(exc))
        self.exc = exc
        self.partial = partial


# -- serialization -----------------------------------------------------------

def ideal_json(I):
    return [str(g) for g in I.groebner()]


def vector_json(v):
    return [str(a) for a in v]


def height_json(h):
    return "infinity" if h == INFINITE_HEIGHT else h


def submodule_json(U, RP):
    """Reduced GB of the preimage in R^n and of the image in R^e."""
    image = RP.image_of(U)
    out = {
        "preimage_gb": [vector_json(v) for v in U.preimage.groebner()],
        "image_gb": [vector_json(v) for v in image.groebner()],
    }
    if RP.rank == 1:
        out["image_ideal"] = [str(v[0]) for v in image.groebner()]
    return out


def field_json(field, values):
    return [field.to_str(c) for c in values]


def sample_json(s, field):
    return {
        "seed": s.seed,
        "coefficients": [field_json(field, row) for row in s.coeffs],
        "r": s.r_value,
        "colon": ideal_json(s.colon),
    }


def _jsonable(x):
    if isinstance(x, float) and x == INFINITE_HEIGHT:
        return "infinity"
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


class _Timer:
    def __init__(self):
        self.stages = {}

    @contextmanager
    def stage(self, name):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.stages[name] = round(self.stages.get(name, 0.0) + time.perf_counter() - t0, 6)


# -- commands ----------------------------------------------------------------

def _rees(E, args, timer):
    with timer.stage("rees"):
        return build_rees(E, seed=args.seed)


def _r_max(args, ell, e):
    return args.max_r if args.max_r is not None else default_r_max(ell, e)


def _invariants_json(E, RP):
    inv = module_invariants(E, RP)
    inv["G"]["witness"] = _jsonable(inv["G"]["witness"])
    return inv


def cmd_invariants(E, args, timer):
    with timer.stage("fitting"):
        fitting = [{"index": i, "gb": ideal_json(E.fitting_ideal(i)),
                    "height": height_json(height(E.fitting_ideal(i)))}
                   for i in range(E.rank(), E.n + 1)]
    with timer.stage("G_table"):
        g_table = []
        for s in range(1, E.ring.nvars + 2):
            holds, witness = E.check_Gs(s)
            g_table.append({"s": s, "holds": holds, "witness": _jsonable(witness)})
    out = {"fitting_ideals": fitting, "G_table": g_table}
    if E.rank() >= 1:
        RP = _rees(E, args, timer)
        with timer.stage("invariants"):
            out["invariants"] = _invariants_json(E, RP)
        out["rees_ideal"] = ideal_json(RP.rees_ideal)
        out["fiber_ideal"] = ideal_json(RP.fiber_ideal())
    else:
        out["invariants"] = {"d": E.ring.nvars, "n": E.n, "e": 0, "proj_dim": E.proj_dim()}
    return out


def cmd_fitting(E, args, timer):
    i = args.index
    if i < 0:
        raise InputError("--index must be non-negative")
    with timer.stage("fitting"):
        F = E.fitting_ideal(i)
        return {"index": i, "gb": ideal_json(F), "height": height_json(height(F))}


def _core_block(E, RP, args, timer):
    ell = analytic_spread(RP)
    e = E.rank()
    r_max = _r_max(args, ell, e)
    samples = []
    try:
        with timer.stage("core_sampled"):
            core_s = core_sampled(E, RP, args.samples, args.window, args.seed,
                                  ell=ell, r_max=r_max, samples=samples)
    except SamplingError as exc:
        raise _Partial(exc, {"ell": ell, "samples": [sample_json(s, E.ring.field)
                                                     for s in samples]}) from None
    with timer.stage("core_formula"):
        core_f = core_formula(E, ell)
    equal = core_s == core_f
    notes = []
    if ell == E.n:
        notes.append("LINEAR_TYPE: no proper reductions, core(E) = E")
    rs = [s.r_value for s in samples]
    if not any(r is not None and r <= ell - e for r in rs):
        notes.append(f"OUT: sampled reduction numbers {rs} exceed l - e = {ell - e}")
    out = {
        "ell": ell,
        "r_max": r_max,
        "samples": [sample_json(s, E.ring.field) for s in samples],
        "reduction_numbers": rs,
        "core_sampled": submodule_json(core_s, RP),
        "core_formula": submodule_json(core_f, RP),
        "equal": equal,
        "notes": notes,
    }
    if not equal:
        v = membership_witness(core_f, core_s)
        side = "formula_not_in_sampled"
        if v is None:
            v = membership_witness(core_s, core_f)
            side = "sampled_not_in_formula"
        out["witness"] = {"side": side, "vector": vector_json(v)}
    return out


def cmd_core(E, args, timer):
    RP = _rees(E, args, timer)
    return _core_block(E, RP, args, timer)


def _theorem_json(E, RP, args, timer):
    ell = analytic_spread(RP)
    try:
        with timer.stage("verify_theorem"):
            rep = verify_theorem(E, RP, args.samples, args.window, args.seed,
                                 r_max=_r_max(args, ell, E.rank()))
    except SamplingError as exc:
        raise _Partial(exc, {"ell": ell}) from None
    inv = rep.invariants
    inv["G"]["witness"] = _jsonable(inv["G"]["witness"])
    out = {
        "invariants": inv,
        "hypotheses": rep.hypotheses,
        "flags": rep.flags,
        "verdict": rep.verdict,
        "notes": rep.notes,
        "checks": rep.checks,
        "samples": [sample_json(s, E.ring.field) for s in rep.samples],
        "reduction_numbers": [s.r_value for s in rep.samples],
        "core_sampled": submodule_json(rep.core_sampled, RP),
        "core_formula": submodule_json(rep.core_formula, RP),
        "fitt_ell": ideal_json(E.fitting_ideal(ell)),
    }
    if rep.witness is not None:
        out["witness"] = {"side": rep.witness["side"],
                          "vector": vector_json(rep.witness["vector"])}
    return out


def _corollary_json(rep):
    return {"name": rep.name, "status": rep.status, "checks": rep.checks,
            "exponent": rep.exponent, "notes": rep.notes}


def cmd_verify(E, args, timer):
    RP = _rees(E, args, timer)
    out = {"theorem": _theorem_json(E, RP, args, timer), "corollaries": []}
    ell = analytic_spread(RP)
    r_max = _r_max(args, ell, E.rank())
    if E.is_linear() and E.ring.nvars >= 2 and E.m > 0:
        with timer.stage("corollary_linear"):
            rep = verify_corollary_linear(E, RP, args.samples, args.window, args.seed, r_max)
        out["corollaries"].append(_corollary_json(rep))
    exps = powers_exponents(E)
    if exps is not None:
        with timer.stage("corollary_integrally_closed"):
            rep = verify_integrally_closed(E, RP, args.samples, args.window, args.seed, r_max)
        entry = _corollary_json(rep)
        entry["construction"] = "+".join(f"m^{a}" for a in exps)
        out["corollaries"].append(entry)
    return out


def cmd_lemma_lab(E, args, timer):
    if E.rank() < 2:
        raise InputError("lemma-lab needs a module of rank at least 2")
    RP = _rees(E, args, timer)
    ell = analytic_spread(RP)
    r_max = _r_max(args, ell, E.rank())
    field = E.ring.field
    trials = []
    for k in range(args.trials):
        seed = derived_seed(args.seed, k)
        try:
            sample = sample_minimal_reduction(E, RP, seed, ell=ell, r_max=r_max)
        except SamplingError as exc:
            raise _Partial(exc, {"ell": ell, "trials": trials}) from None
        with timer.stage("lab"):
            lab = general_element_lab(E, RP, sample, seed, r_max)
        data = dict(lab.data)
        data["x"] = field_json(field, data["x"])
        trials.append({"seed": seed, "sample": sample_json(sample, field),
                       "checks": lab.checks, "data": data, "passed": lab.passed})
    return {"ell": ell, "e": E.rank(), "trials": trials,
            "all_passed": all(t["passed"] for t in trials)}


COMMANDS = {
    "invariants": cmd_invariants,
    "core": cmd_core,
    "verify": cmd_verify,
    "lemma-lab": cmd_lemma_lab,
    "fitting": cmd_fitting,
}


# -- plumbing ----------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, metavar="PATH", help="module input file (JSON)")
    common.add_argument("--seed", type=int, default=1)
    common.add_argument("--samples", type=int, default=25)
    common.add_argument("--window", type=int, default=5)
    common.add_argument("--max-r", type=int, default=None, dest="max_r",
                        help="largest reduction number tried (default l - e + 4)")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--char", type=int, default=None,
                        help="override the characteristic in the input file")
    common.add_argument("--timing", action="store_true",
                        help="add wall-clock seconds per stage (breaks byte-identity)")
    parser = argparse.ArgumentParser(prog="pdcore", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"pdcore {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("invariants", "core", "verify"):
        sub.add_parser(name, parents=[common])
    lab = sub.add_parser("lemma-lab", parents=[common])
    lab.add_argument("--trials", type=int, default=3)
    fit = sub.add_parser("fitting", parents=[common])
    fit.add_argument("--index", type=int, required=True)
    return parser


def render_text(obj, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}-")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(obj))
    return "\n".join(lines)


def _scalar(v):
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (dict, list)):
        return "[]" if isinstance(v, list) else "{}"
    return str(v)


def _emit(report, fmt, stream):
    if fmt == "json":
        stream.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        stream.write(render_text(report) + "\n")


def run(argv=None, stdout=None, stderr=None):
    """Run the CLI and return the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    timer = _Timer()
    report = {"tool": "pdcore", "tool_version": __version__, "command": args.command,
              "seed": args.seed}
    try:
        for flag in ("samples", "window", "trials"):
            if getattr(args, flag, 1) < 1:
                raise InputError(f"--{flag} must be at least 1")
        if args.max_r is not None and args.max_r < 0:
            raise InputError("--max-r must be non-negative")
        with timer.stage("load"):
            E = load_module_file(args.input, args.char)
        report["input"] = module_to_dict(E)
        report["result"] = COMMANDS[args.command](E, args, timer)
        code = EXIT_OK
    except InputError as exc:
        report["error"] = {"kind": "input", "message": str(exc)}
        code = EXIT_INPUT
    except _Partial as exc:
        report["error"] = {"kind": "sampling", "message": str(exc)}
        report["partial"] = exc.partial
        code = EXIT_SAMPLING
    except (ReesCrossCheckError, EmbeddingError) as exc:
        report["error"] = {"kind": "cross_check", "message": str(exc)}
        code = EXIT_CROSS_CHECK
    if args.timing:
        report["timing"] = timer.stages
    _emit(report, args.format, stdout)
    if code != EXIT_OK:
        stderr.write(f"pdcore: {report['error']['message']}\n")
    return code


def main(argv=None):
    sys.exit(run(argv))
