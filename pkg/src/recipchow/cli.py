"""Command-line entry point: ``recipchow <command> [options]``.

Exit status 0 on success, 1 on a precondition (input) error, 2 when an
internal consistency check fails.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from dataclasses import dataclass

from .detrep import BETA, GAMMA, chow_form, hb_basis, phi_symbolic
from .entropic import (DEFAULT_TOLERANCE, monomial_label, mult_matrices, sos_certificate,
                       trace_form_disc)
from .errors import InternalInconsistencyError, PreconditionError
from .exterior import complement_pluecker, index_name
from .hadamard import bichow_form, bichow_value, hadamard_surface, hadamard_surface_symbolic
from .jsonio import dumps, load_matrix, load_space, matrix_json, render_text
from .matroid import basis_order_check, circuits_and_broken
from .rational import format_rational
from .simplicial import forest_expansion, form_resultant, spanning_forests, tree_resultant
from .suites import run_suite

COMMANDS = ("pluecker", "matroid", "chow", "expand", "bichow", "hadamard",
            "entropic", "resultant", "verify")


@dataclass(frozen=True)
class JobSpec:
    command: str
    input: str | None = None
    input2: str | None = None
    vars: str = GAMMA
    format: str = "json"
    seed: int = 0
    suite: str = "all"
    tolerance: float = DEFAULT_TOLERANCE
    cleared: bool = False
    n: int | None = None
    d: int | None = None

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "JobSpec":
        return cls(ns.command, ns.input, ns.input2, ns.vars, ns.format, ns.seed, ns.suite,
                   ns.tolerance, ns.cleared, ns.n, ns.d)


def _names(subsets, n):
    return [index_name(I, n) for I in subsets]


def _need(spec: JobSpec, *fields: str) -> None:
    for f in fields:
        if getattr(spec, f) is None:
            raise PreconditionError(f"{spec.command} needs --{f.replace('_', '-')}")


def _shape(spec: JobSpec) -> tuple[int, int]:
    if spec.n is None or spec.d is None:
        raise PreconditionError(f"{spec.command} needs --input or both --n and --d")
    return spec.n, spec.d


def cmd_pluecker(spec: JobSpec) -> dict:
    _need(spec, "input")
    L, _ = load_space(spec.input)
    p = L.plucker
    return {"command": "pluecker", "pluecker": p.to_json(),
            "complement": complement_pluecker(p).to_json(),
            "three_term_relations": p.three_term_relations_hold()}


def cmd_matroid(spec: JobSpec) -> dict:
    _need(spec, "input")
    L, _ = load_space(spec.input)
    m = L.matroid
    n = m.n
    bcc = circuits_and_broken(m)
    order = basis_order_check(m)
    return {"command": "matroid", "n": n, "d": m.d,
            "bases": _names(m.sorted_bases(), n),
            "circuits": _names(sorted(bcc.circuits), n),
            "broken_circuits": _names(sorted(bcc.broken_circuits), n),
            "bcc_facets": _names(bcc.facets, n),
            "degree": bcc.degree,
            "hb_dimension": hb_basis(m).k,
            "order_maximal": _names(order.maximal, n)}


def cmd_chow(spec: JobSpec) -> dict:
    _need(spec, "input")
    if spec.vars not in (GAMMA, BETA):
        raise PreconditionError("--vars must be gamma or beta")
    L, _ = load_space(spec.input)
    phi = phi_symbolic(L, spec.vars)
    p = chow_form(L, spec.vars, cleared=spec.cleared)
    return {"command": "chow", "convention": spec.vars, "cleared": spec.cleared,
            "k": phi.k, "matrix": phi.to_json()["entries"], "chow_form": p.to_json()}


def cmd_expand(spec: JobSpec) -> dict:
    if spec.input:
        L, _ = load_space(spec.input)
        n, d, alpha = L.n, L.d, L.plucker.as_dict()
    else:
        (n, d), alpha = _shape(spec), None
    forests = spanning_forests(n, d)
    counts = Counter(F.coefficient for F in forests)
    p = forest_expansion(n, d, alpha=alpha)
    return {"command": "expand", "n": n, "d": d, "forests": len(forests),
            "coefficient_counts": {str(c): counts[c] for c in sorted(counts)},
            "coefficient_sum": sum(F.coefficient for F in forests),
            "expansion": p.to_json()}


def cmd_bichow(spec: JobSpec) -> dict:
    if spec.input:
        _need(spec, "input2")
        L, _ = load_space(spec.input)
        M, _ = load_space(spec.input2)
        return {"command": "bichow", "n": L.n, "d": L.d,
                "value": format_rational(bichow_value(L.plucker, M.plucker)),
                "swapped": format_rational(bichow_value(M.plucker, L.plucker))}
    n, d = _shape(spec)
    form = bichow_form(n, d)
    return {"command": "bichow", "n": n, "d": d, "bidegree": list(form.bidegree()),
            "form": form.poly.to_json()}


def cmd_hadamard(spec: JobSpec) -> dict:
    if spec.input:
        _need(spec, "input2")
        L, _ = load_space(spec.input)
        M, _ = load_space(spec.input2)
        p = hadamard_surface(L, M)
        return {"command": "hadamard", "n": L.n, "d": L.d, "degree": p.total_degree(),
                "surface": p.to_json()}
    n, d = _shape(spec)
    return {"command": "hadamard", "n": n, "d": d,
            "surface": hadamard_surface_symbolic(n, d).to_json()}


def cmd_entropic(spec: JobSpec) -> dict:
    _need(spec, "input")
    L, perp = load_space(spec.input)
    mm = mult_matrices(L, perp)
    tf = trace_form_disc(L, mm=mm)
    cert = sos_certificate(L, spec.tolerance, mm=mm, tf=tf, seed=spec.seed)
    if cert.mode == "exact":
        squares = [q.to_json() for q in cert.squares]
    else:
        squares = [[{"exps": list(e), "coeff": c} for e, c in sorted(q.items(), reverse=True)]
                   for q in cert.squares]
    sos = {"mode": cert.mode, "count": len(cert.squares), "squares": squares}
    if cert.mode == "exact":
        sos["factor"] = matrix_json(cert.factor)
    else:
        sos["residual"] = cert.residual
        sos["tolerance"] = spec.tolerance
    return {"command": "entropic", "frame": mm.frame.to_json(), "k": mm.k,
            "gram": matrix_json(mm.gram),
            "basis": [monomial_label(a, L.d) for a in tf.basis],
            "H": [[e.to_json() for e in row] for row in tf.H],
            "det_raw": tf.det_raw.to_json(), "det_normalized": tf.det_normalized.to_json(),
            "sos": sos}


def cmd_resultant(spec: JobSpec) -> dict:
    _need(spec, "input", "input2")
    a, c = load_matrix(spec.input), load_matrix(spec.input2)
    t, s = tree_resultant(a, c), form_resultant(a, c)
    if (t == 0) != (s == 0):
        raise InternalInconsistencyError("tree sum and Sylvester resultant disagree on vanishing")
    return {"command": "resultant", "tree_sum": format_rational(t), "sylvester": format_rational(s),
            "ratio": format_rational(t / s) if s else None}


def cmd_verify(spec: JobSpec) -> dict:
    results = run_suite(spec.suite, spec.seed)
    return {"command": "verify", "suite": spec.suite, "seed": spec.seed,
            "passed": all(r.passed for r in results),
            "results": [r.to_json() for r in results]}


HANDLERS = {name: globals()[f"cmd_{name}"] for name in COMMANDS}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="recipchow", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--input", help="linear space JSON file")
    ap.add_argument("--input2", help="second space (bichow, hadamard) or coefficient matrix (resultant)")
    ap.add_argument("--vars", choices=(GAMMA, BETA), default=GAMMA)
    ap.add_argument("--format", choices=("json", "text"), default="json")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--suite", default="all")
    ap.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    ap.add_argument("--cleared", action="store_true", help="multiply the Chow form by prod alpha_I")
    ap.add_argument("--n", type=int)
    ap.add_argument("--d", type=int)
    return ap


def run_command(spec: JobSpec) -> tuple[int, dict]:
    try:
        doc = HANDLERS[spec.command](spec)
    except InternalInconsistencyError as exc:
        return 2, {"command": spec.command, "error": "internal", "message": str(exc)}
    except PreconditionError as exc:
        return 1, {"command": spec.command, "error": "precondition", "message": str(exc)}
    if spec.command == "verify" and not doc["passed"]:
        return 2, doc
    return 0, doc


def main(argv=None) -> int:
    spec = JobSpec.from_args(build_parser().parse_args(argv))
    status, doc = run_command(spec)
    out = dumps(doc) if spec.format == "json" else render_text(doc)
    (sys.stdout if status == 0 or spec.command == "verify" else sys.stderr).write(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
