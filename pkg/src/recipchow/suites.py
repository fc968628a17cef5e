"""Randomized cross-checks between independent constructions.

Each check takes a seed and sample counts and returns a CheckResult; the CLI
``verify`` command runs them at a quick scale, the acceptance tests at full
scale.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable

from .detrep import GAMMA, LinearSpace, chow_form, hb_basis, kernel_witness_check
from .entropic import (disc_oracle_d2, proportionality, sos_certificate, trace_form_disc,
                       y_names)
from .errors import PreconditionError
from .exterior import subsets
from .hadamard import bichow_symmetry_pair, bichow_value, hadamard_surface, membership_check
from .linalg import nullspace
from .matroid import bcc_facets_degree
from .reality import fiber_check_report, hyp_point_check
from .sampling import random_matrix, random_space, random_space_with_zeros
from .simplicial import forest_expansion, form_resultant, minors_2xn, tree_resultant


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    samples: int
    seed: int
    seconds: float
    detail: str = ""

    def line(self, timing: bool = False) -> str:
        status = "PASS" if self.passed else "FAIL"
        clock = f" {self.seconds:7.2f}s" if timing else ""
        extra = f"  {self.detail}" if self.detail else ""
        return f"{status}  {self.name:<22} samples={self.samples:<5} seed={self.seed:<6}{clock}{extra}"

    def to_json(self) -> dict:
        # no timings, so that output is reproducible byte for byte
        return {"name": self.name, "passed": self.passed, "samples": self.samples,
                "seed": self.seed, "detail": self.detail}


def _timed(name: str, seed: int, body: Callable[[random.Random], tuple[bool, int, str]]) -> CheckResult:
    rng = random.Random(seed)
    t0 = time.perf_counter()
    ok, samples, detail = body(rng)
    return CheckResult(name, ok, samples, seed, time.perf_counter() - t0, detail)


def degree_identity(seed: int = 0, count: int = 200, n_max: int = 7) -> CheckResult:
    """dim H_B equals the number of broken-circuit-complex facets."""
    def body(rng):
        bad = []
        zeros = 0
        for i in range(count):
            n = rng.randint(3, n_max)
            d = rng.randint(2, n - 1)
            L = random_space_with_zeros(rng, n, d) if i % 2 else random_space(rng, n, d, generic=False)
            m = L.matroid
            if len(m.bases) < comb(n, d):
                zeros += 1
            _, deg = bcc_facets_degree(m)
            if hb_basis(m).k != deg:
                bad.append((n, d))
        return not bad, count, f"non-uniform={zeros}" + (f" mismatches={bad[:3]}" if bad else "")
    return _timed("degree_identity", seed, body)


ORACLE_SHAPES = ((2, 3), (2, 4), (2, 5), (2, 6), (3, 4), (3, 5), (3, 6))


def oracle_equivalence(seed: int = 0, shapes=ORACLE_SHAPES) -> CheckResult:
    """prod(alpha) det(phi) equals the spanning-forest expansion."""
    def body(rng):
        bad = []
        for d, n in shapes:
            L = random_space(rng, n, d, bound=6, den=4)
            lhs = chow_form(L, GAMMA, cleared=True)
            rhs = forest_expansion(n, d, alpha=L.plucker.as_dict())
            if lhs != rhs:
                bad.append((d, n))
        return not bad, len(shapes), f"mismatches={bad}" if bad else ""
    return _timed("oracle_equivalence", seed, body)


def _witness_instance(rng: random.Random):
    while True:
        n = rng.randint(3, 6)
        d = rng.randint(1, n - 1)
        winv = [Fraction(rng.choice([-1, 1]) * rng.randint(1, 6), rng.randint(1, 3)) for _ in range(n)]
        rows = [winv] + random_matrix(rng, d - 1, n, bound=5)
        try:
            L = LinearSpace.from_rows(rows)
        except PreconditionError:
            continue
        w = [1 / x for x in winv]
        delta = {I: Fraction(rng.randint(-5, 5)) for I in subsets(n, n - d - 1)}
        return L, w, delta


def kernel_witnesses(seed: int = 0, count: int = 100) -> CheckResult:
    """diag_w(alpha) is annihilated by phi(delta ^ w) whenever w^{-1} is in L."""
    def body(rng):
        bad = 0
        for _ in range(count):
            L, w, delta = _witness_instance(rng)
            if not kernel_witness_check(L, w, delta):
                bad += 1
        return bad == 0, count, f"failures={bad}" if bad else ""
    return _timed("kernel_witnesses", seed, body)


def _distinct_root_matrix(rng: random.Random, n: int) -> list[list[Fraction]]:
    while True:
        a = random_matrix(rng, 2, n, bound=6)
        if all(v != 0 for v in minors_2xn(a).values()):
            return a


def _shared_root_rows(rng: random.Random, a) -> list[list[Fraction]]:
    """Two coefficient rows whose fiber forms vanish at a common rational point."""
    n = len(a[0])
    while True:
        s0, t0 = Fraction(rng.randint(-5, 5)), Fraction(rng.randint(1, 5))
        ell = [a[0][j] * s0 + a[1][j] * t0 for j in range(n)]
        if all(ell):
            break
    rows = []
    for _ in range(2):
        c = [Fraction(rng.randint(-5, 5)) for _ in range(n)]
        c[-1] = -ell[-1] * sum((c[i] / ell[i] for i in range(n - 1)), Fraction(0))
        rows.append(c)
    return rows


def resultant_equivalence(seed: int = 0, count: int = 200, per_a: int = 4) -> CheckResult:
    """Tree sum vanishes iff the Sylvester resultant does; their ratio depends on a only."""
    def body(rng):
        done = 0
        bad_zero = bad_const = shared = 0
        while done < count:
            n = rng.randint(3, 6)
            a = _distinct_root_matrix(rng, n)
            consts = set()
            for j in range(per_a):
                if done >= count:
                    break
                c = _shared_root_rows(rng, a) if j % 2 else random_matrix(rng, 2, n, bound=6)
                t, s = tree_resultant(a, c), form_resultant(a, c)
                done += 1
                if (t == 0) != (s == 0):
                    bad_zero += 1
                elif s != 0:
                    consts.add(t / s)
                else:
                    shared += 1
            if len(consts) > 1:
                bad_const += 1
        ok = bad_zero == 0 and bad_const == 0
        return ok, done, f"shared-root cases={shared} zero-mismatch={bad_zero} const-mismatch={bad_const}"
    return _timed("resultant_equivalence", seed, body)


def hadamard_membership(seed: int = 0, count: int = 20, points: int = 50) -> CheckResult:
    """Degree C(n-2, d-1) and vanishing on sampled products a * b."""
    def body(rng):
        bad = []
        for i in range(count):
            n = 4 if i % 2 == 0 else 5
            L = random_space(rng, n, 2)
            M = random_space(rng, n, n - 2)
            p = hadamard_surface(L, M)
            if p.total_degree() != comb(n - 2, 1) or not membership_check(p, L, M, points, rng):
                bad.append(n)
        return not bad, count, f"failures={bad}" if bad else ""
    return _timed("hadamard_membership", seed, body)


def bichow_symmetry(seed: int = 0, count: int = 10) -> CheckResult:
    """P(L, M) and P(M, L) both vanish when w^{-1} in L and w in M."""
    def body(rng):
        bad = 0
        for i in range(count):
            n, d = (4, 2) if i % 2 == 0 else (5, 2)
            L, M, _ = bichow_symmetry_pair(n, d, rng)
            if bichow_value(L.plucker, M.plucker) != 0 or bichow_value(M.plucker, L.plucker) != 0:
                bad += 1
        return bad == 0, count, f"failures={bad}" if bad else ""
    return _timed("bichow_symmetry", seed, body)


def real_fibers(seed: int = 0, count: int = 10, fibers: int = 100, n_max: int = 6) -> CheckResult:
    """Every sampled fiber of L^{-1} (d = 2) is real."""
    def body(rng):
        bad = 0
        collisions = 0
        for _ in range(count):
            n = rng.randint(3, n_max)
            L = random_space(rng, n, 2, generic=False)
            rep = fiber_check_report(L, fibers, seed=rng.randrange(2 ** 31))
            collisions += rep.collisions
            if not rep.ok:
                bad += 1
        return bad == 0, count * fibers, f"collisions={collisions}" + (f" nonreal={bad}" if bad else "")
    return _timed("real_fibers", seed, body)


def complex_points(seed: int = 0, count: int = 200) -> CheckResult:
    """(a + i b)^{-1} never lies in L for b in L^perp (real L)."""
    def body(rng):
        bad = done = 0
        while done < count:
            n = rng.randint(3, 6)
            d = rng.randint(1, n - 1)
            L = random_space(rng, n, d, generic=False)
            K = nullspace(L.mat)
            coeffs = [rng.randint(-4, 4) for _ in range(K.rows)]
            b = [sum((c * K[r, j] for r, c in enumerate(coeffs)), Fraction(0)) for j in range(n)]
            a = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)]
            if not any(b) or any(x == 0 and y == 0 for x, y in zip(a, b)):
                continue
            done += 1
            if not hyp_point_check(L, a, b):
                bad += 1
        return bad == 0, done, f"failures={bad}" if bad else ""
    return _timed("complex_points", seed, body)


def sos_floating(seed: int = 0, count: int = 10, points: int = 500, tolerance: float = 1e-9) -> CheckResult:
    """Floating SOS residual on Gr(2,5) and det(H) >= 0 at random rational points."""
    def body(rng):
        worst = 0.0
        negative = 0
        for _ in range(count):
            L = random_space(rng, 5, 2, bound=5)
            tf = trace_form_disc(L)
            cert = sos_certificate(L, tolerance, tf=tf, force_floating=True, seed=rng.randrange(2 ** 31))
            worst = max(worst, cert.residual)
            y1, y2 = y_names(2)
            for _ in range(points):
                pt = {y1: Fraction(rng.randint(-99, 99), rng.randint(1, 30)),
                      y2: Fraction(rng.randint(-99, 99), rng.randint(1, 30))}
                if tf.det_raw.evaluate(pt) < 0:
                    negative += 1
        ok = worst < tolerance and negative == 0
        return ok, count, f"max residual={worst:.2e} negative={negative}"
    return _timed("sos_floating", seed, body)


def d2_crosscheck(seed: int = 0, count: int = 10, n_max: int = 6) -> CheckResult:
    """det(H) is a positive multiple of the fiber discriminant (d = 2)."""
    def body(rng):
        bad = []
        for _ in range(count):
            n = rng.randint(3, n_max)
            L = random_space(rng, n, 2, bound=5)
            c = proportionality(trace_form_disc(L).det_raw, disc_oracle_d2(L))
            if c is None or c <= 0:
                bad.append(n)
        return not bad, count, f"failures={bad}" if bad else ""
    return _timed("d2_crosscheck", seed, body)


QUICK = {
    "matroid": lambda s: [degree_identity(s, count=30, n_max=6)],
    "chow": lambda s: [oracle_equivalence(s, shapes=((2, 4), (2, 5), (3, 5)))],
    "kernel": lambda s: [kernel_witnesses(s, count=20)],
    "resultant": lambda s: [resultant_equivalence(s, count=40)],
    "hadamard": lambda s: [hadamard_membership(s, count=4, points=20), bichow_symmetry(s, count=4)],
    "reality": lambda s: [real_fibers(s, count=4, fibers=30), complex_points(s, count=40)],
    "entropic": lambda s: [sos_floating(s, count=2, points=100), d2_crosscheck(s, count=4, n_max=5)],
}


def run_suite(name: str, seed: int) -> list[CheckResult]:
    if name == "all":
        return [r for key in QUICK for r in QUICK[key](seed)]
    if name not in QUICK:
        raise PreconditionError(f"unknown suite {name!r}; choose from all, {', '.join(QUICK)}")
    return QUICK[name](seed)
