"""Instance checkers for the lattice point inequalities.

Every checker returns a :class:`VerificationReport` whose ``lhs`` and ``rhs``
are the exact quantities compared.  Hypotheses are checked before
conclusions: a failed hypothesis raises :class:`ConditionFailed` (or
:class:`PreconditionViolated` for malformed parameters) and is never
reported as a violation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import exact
from .counting import count_D_points, count_G
from .lattice import (
    AdaptedBasis,
    Lattice,
    Subgroup,
    enumerate_in_body,
    integer_points,
    subgroup_prefix,
)
from .minima import MinimaProfile, property5_violations, successive_minima, symmetric_body
from .polytope import (
    Polytope,
    UnsupportedDimension,
    difference_body,
    half_difference_body,
    minkowski_diff_bodies,
)

HOLDS = "holds"
VIOLATED = "violated"
INCONCLUSIVE = "inconclusive"
BUDGET_EXHAUSTED = "budget_exhausted"

# rational enclosures of the irrational constants
FOUR_OVER_E = (Fraction("1.4715"), Fraction("1.4716"))
SQRT3 = (Fraction("1.7320"), Fraction("1.7321"))
CBRT_40_9 = (Fraction("1.6437"), Fraction("1.6438"))


class PreconditionViolated(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ConditionFailed(ValueError):
    """The instance does not satisfy the statement's hypotheses."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass
class VerificationReport:
    statement: str
    verdict: str
    lhs: Fraction
    rhs: Fraction
    witness: Optional[dict] = None
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict == VIOLATED and self.witness is None:
            raise ValueError("a violated report needs a witness")

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    def to_json(self) -> dict:
        return {
            "statement": self.statement,
            "verdict": self.verdict,
            "lhs": exact.fmt(self.lhs),
            "rhs": exact.fmt(self.rhs),
            "witness": _jsonable(self.witness),
            "details": _jsonable(self.details),
        }


def _jsonable(x):
    if isinstance(x, Fraction):
        return exact.fmt(x)
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        return "inf" if math.isinf(x) else repr(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return x.to_json()
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _verdict(ok: bool) -> str:
    return HOLDS if ok else VIOLATED


def _prod(values) -> int:
    out = 1
    for v in values:
        out *= v
    return out


# --------------------------------------------------------------------------
# emptiness tests shared by several statements
# --------------------------------------------------------------------------

def scaled_points(body_coords: Polytope, n) -> list:
    """Lattice points u (lattice coordinates) with n*u in the body, which is
    already given in lattice coordinates."""
    return integer_points(body_coords.scale(1 / exact.rat(n)))


def outside_prefix(points, basis: AdaptedBasis, i: int) -> list:
    """Points not in Z e^1 + ... + Z e^i."""
    return [u for u in points if not basis.in_prefix(u, i)]


# --------------------------------------------------------------------------
# residue and subgroup lemmas
# --------------------------------------------------------------------------

def check_property5(k: Polytope, lat: Lattice, profile: MinimaProfile) -> VerificationReport:
    bad = property5_violations(k, lat, profile)
    witness = {"i": bad[0][0], "point": list(bad[0][1])} if bad else None
    return VerificationReport("property5", _verdict(not bad), Fraction(len(bad)), Fraction(0), witness)


def check_lemma21(k: Polytope, lat: Lattice, profile: MinimaProfile, i: int, n) -> VerificationReport:
    """(K - K) cap n (Lambda minus Lambda^{i-1}) is empty for n > 2 / lam_i."""
    n = exact.rat(n)
    d = k.dim
    if not 1 <= i <= d:
        raise PreconditionViolated(f"index i={i} out of range")
    if n <= 2 / profile.lam[i - 1]:
        raise PreconditionViolated(f"n={exact.fmt(n)} is not larger than 2/lambda_{i}")
    dk = difference_body(lat.body_in_coords(k))
    bad = outside_prefix(scaled_points(dk, n), profile.adapted, i - 1)
    witness = {"point": [exact.fmt(n * v) for v in bad[0]]} if bad else None
    return VerificationReport("lemma21", _verdict(not bad), Fraction(len(bad)), Fraction(0), witness,
                              {"i": i, "n": n})


def check_lemma22(k: Polytope, lat: Lattice, sub: Subgroup) -> VerificationReport:
    """G(K, L) <= [L : L~] G(K - K, L~) for a full-rank sublattice L~."""
    if sub.rank != k.dim:
        raise PreconditionViolated("the sublattice must have full rank")
    gens = _basis_of(sub)
    fine = lat.sublattice(gens)
    index = abs(exact.det(gens))
    g, _ = count_G(k, lat)
    g_sub, _ = count_G(difference_body(k), fine)
    rhs = index * g_sub
    witness = None if g <= rhs else {"G": g, "index": int(index), "G_sub": g_sub}
    return VerificationReport("lemma22", _verdict(g <= rhs), Fraction(g), Fraction(rhs), witness,
                              {"index": index, "G_difference_body": g_sub})


def _basis_of(sub: Subgroup) -> tuple:
    """A basis (d vectors) of a full-rank subgroup, from its HNF."""
    h, pivots = sub._hnf
    return tuple(tuple(h[i][col] for i in range(sub.dim)) for _, col in pivots)


# --------------------------------------------------------------------------
# divisibility chains
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ChainSolution:
    q: tuple
    n: tuple
    product: int
    ratio: Fraction
    search_bound: tuple = ()

    def __post_init__(self):
        if len(self.n) != len(self.q) or any(a < b for a, b in zip(self.n, self.q)):
            raise ValueError("chain does not dominate q")

    def to_json(self) -> dict:
        return {"q": list(self.q), "n": list(self.n), "product": self.product,
                "ratio": exact.fmt(self.ratio), "search_bound": list(self.search_bound)}


def _check_q(q):
    q = tuple(int(v) for v in q)
    if not q or any(v <= 0 for v in q):
        raise ValueError("q must be a nonempty list of positive integers")
    if any(a < b for a, b in zip(q, q[1:])):
        raise ValueError("q must be nonincreasing")
    return q


def doubling_chain(q) -> tuple:
    """n_i = q_d * 2^ceil(log2(q_i / q_d)); always a valid chain."""
    q = _check_q(q)
    base = q[-1]
    out = []
    for v in q:
        n = base
        while n < v:
            n *= 2
        out.append(n)
    return tuple(out)


def _search_chain(q, divisible_from: int):
    """Minimal-product nonincreasing n >= q where n_{i+1} | n_i is required
    for (1-based) i >= divisible_from; ties broken lexicographically."""
    d = len(q)
    bound = tuple((2 ** d) * v for v in q)
    suffix_q = [1] * (d + 1)
    for i in range(d - 1, -1, -1):
        suffix_q[i] = suffix_q[i + 1] * q[i]
    best = [None, None]  # product, tuple

    def rec(i, chosen_rev, partial):
        # chosen_rev holds n_d, n_{d-1}, ..., n_{i+2} (0-based index i+1 ...)
        if i < 0:
            n = tuple(reversed(chosen_rev))
            if best[0] is None or (partial, n) < (best[0], best[1]):
                best[0], best[1] = partial, n
            return
        if best[0] is not None and partial * suffix_q[0] // suffix_q[i + 1] > best[0]:
            return
        nxt = chosen_rev[-1] if chosen_rev else None
        if nxt is None:
            options = range(q[i], bound[i] + 1)
        elif i + 1 >= divisible_from and i + 1 < d:
            # 1-based index of n_i is i + 1; n_{i+2} | n_{i+1}
            start = max(q[i], nxt)
            first = -(-start // nxt) * nxt
            options = range(first, bound[i] + 1, nxt)
        else:
            options = [max(q[i], nxt)]
        for v in options:
            p = partial * v
            if best[0] is not None and p * (suffix_q[0] // suffix_q[i]) > best[0]:
                break
            rec(i - 1, chosen_rev + [v], p)

    rec(d - 1, [], 1)
    return best[1], bound


def minimize_chain(q: Sequence[int]) -> ChainSolution:
    """Dominate a nonincreasing q by a full divisibility chain of minimal
    product (branch and bound, exhaustive up to the sound bound 2^d q_i)."""
    q = _check_q(q)
    n, bound = _search_chain(q, 1)
    prod = _prod(n)
    return ChainSolution(q, n, prod, Fraction(prod, _prod(q)), bound)


def minimize_tail_chain(q: Sequence[int]) -> ChainSolution:
    """Like :func:`minimize_chain` but only n_d | ... | n_3 is required and n
    nonincreasing."""
    q = _check_q(q)
    n, bound = _search_chain(q, 3)
    prod = _prod(n)
    return ChainSolution(q, n, prod, Fraction(prod, _prod(q)), bound)


def is_chain(n, divisible_from: int = 1) -> bool:
    d = len(n)
    for i in range(d - 1):
        if n[i] < n[i + 1]:
            return False
        if i + 1 >= divisible_from and n[i] % n[i + 1]:
            return False
    return True


def constant_enclosure(d: int, symmetric: bool = False):
    """Rational (lower, upper) bounds of (4/e) * base^(d-1)."""
    base = CBRT_40_9 if symmetric else SQRT3
    return FOUR_OVER_E[0] * base[0] ** (d - 1), FOUR_OVER_E[1] * base[1] ** (d - 1)


# --------------------------------------------------------------------------
# lattice point inequalities
# --------------------------------------------------------------------------

def verify_thm311(k: Polytope, lat: Lattice, profile: MinimaProfile | None = None) -> VerificationReport:
    profile = profile or successive_minima(k, lat)
    chain = minimize_chain(profile.q)
    g, _ = count_G(k, lat)
    cube = profile.q[0] ** k.dim
    ok = g <= chain.product and g <= cube
    witness = None if ok else {"G": g, "chain": list(chain.n), "q": list(profile.q)}
    return VerificationReport("thm311", _verdict(ok), Fraction(g), Fraction(chain.product), witness,
                              {"chain": chain, "q": list(profile.q), "q1_power_d": cube,
                               "ineq3": g <= cube})


def verify_ineq3(k: Polytope, lat: Lattice, profile: MinimaProfile | None = None) -> VerificationReport:
    profile = profile or successive_minima(k, lat)
    g, _ = count_G(k, lat)
    rhs = profile.q[0] ** k.dim
    witness = None if g <= rhs else {"G": g, "q": list(profile.q)}
    return VerificationReport("ineq3", _verdict(g <= rhs), Fraction(g), Fraction(rhs), witness,
                              {"q": list(profile.q)})


def verify_thm312(k: Polytope, lat: Lattice, profile: MinimaProfile | None = None) -> VerificationReport:
    profile = profile or successive_minima(k, lat)
    d = k.dim
    g, _ = count_G(k, lat)
    pq = _prod(profile.q)
    lo, hi = constant_enclosure(d)
    symmetric = k.is_symmetric()
    if g <= lo * pq:
        verdict = HOLDS
    elif g > hi * pq:
        verdict = VIOLATED
    else:
        verdict = INCONCLUSIVE
    slo, shi = constant_enclosure(d, symmetric=True)
    sym_verdict = HOLDS if g <= slo * pq else (VIOLATED if g > shi * pq else INCONCLUSIVE)
    details = {"q": list(profile.q), "constant_lower": lo, "constant_upper": hi,
               "symmetric_input": symmetric, "symmetric_constant_verdict": sym_verdict}
    if symmetric and sym_verdict != HOLDS and verdict == HOLDS:
        verdict = sym_verdict
    if not symmetric and sym_verdict != HOLDS:
        details["flag"] = "symmetric refinement not applicable to this body"
    witness = None if verdict != VIOLATED else {"G": g, "q": list(profile.q)}
    return VerificationReport("thm312", verdict, Fraction(g), lo * pq, witness, details)


def verify_ineq4(k: Polytope, lat: Lattice, profile: MinimaProfile | None = None) -> VerificationReport:
    profile = profile or successive_minima(k, lat)
    g, pts = count_G(k, lat)
    rhs = _prod(profile.q)
    status = "theorem" if k.dim <= 3 else "conjectural"
    witness = None if g <= rhs else {"G": g, "q": list(profile.q), "lambda": list(profile.lam)}
    return VerificationReport("ineq4", _verdict(g <= rhs), Fraction(g), Fraction(rhs), witness,
                              {"q": list(profile.q), "lambda": list(profile.lam), "status": status})


def verify_minkowski2(k: Polytope, lat: Lattice, profile: MinimaProfile | None = None) -> VerificationReport:
    """(1/d!) prod(2/lam_i) <= vol / det <= prod(2/lam_i), with the volume of
    (K - K)/2 standing in for that of a non-symmetric K."""
    d = k.dim
    if d > 3:
        raise UnsupportedDimension("volume is implemented for dimension <= 3")
    profile = profile or successive_minima(k, lat)
    symmetric = k.is_symmetric()
    body = k if symmetric else half_difference_body(k)
    ratio = body.volume() / lat.det
    upper = _prod(Fraction(2) / v for v in profile.lam)
    lower = upper / math.factorial(d)
    ok = lower <= ratio <= upper
    witness = None if ok else {"lower": lower, "ratio": ratio, "upper": upper}
    return VerificationReport("minkowski2", _verdict(ok), ratio, upper, witness,
                              {"lower": lower, "symmetric_input": symmetric})


def check_brunn_minkowski(k: Polytope) -> VerificationReport:
    lhs = k.volume()
    rhs = half_difference_body(k).volume()
    witness = None if lhs <= rhs else {"vol": lhs, "vol_half_difference": rhs}
    return VerificationReport("brunn-minkowski", _verdict(lhs <= rhs), lhs, rhs, witness)


# --------------------------------------------------------------------------
# conjecture instances
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ConjectureInstance:
    """Bodies K_1..K_n, a lattice with basis e (lattice coordinates) and
    integers q_1 >= ... >= q_{d+1}."""

    lattice: Lattice
    basis: tuple
    bodies: tuple
    q: tuple

    def __post_init__(self):
        d = self.lattice.dim
        basis = tuple(tuple(int(v) for v in b) for b in self.basis)
        q = tuple(int(v) for v in self.q)
        if len(basis) != d or abs(exact.det(basis)) != 1:
            raise ValueError("basis must be a unimodular set of d lattice vectors")
        if len(q) != d + 1 or any(v <= 0 for v in q) or any(a < b for a, b in zip(q, q[1:])):
            raise ValueError("q must be d+1 nonincreasing positive integers")
        if not self.bodies or any(b.dim != d for b in self.bodies):
            raise ValueError("bodies must be a nonempty list in the lattice dimension")
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "bodies", tuple(self.bodies))

    @property
    def dim(self) -> int:
        return self.lattice.dim

    @property
    def adapted(self) -> AdaptedBasis:
        return AdaptedBasis(self.basis, self.basis)


def conjecture_conditions(inst: ConjectureInstance):
    """First failed hypothesis as (name, witness dict), or None."""
    d = inst.dim
    basis = inst.adapted
    coords = [inst.lattice.body_in_coords(b) for b in inst.bodies]
    for j, body in enumerate(coords):
        dk = difference_body(body)
        for i in range(1, d + 1):
            bad = outside_prefix(scaled_points(dk, inst.q[i - 1]), basis, i - 1)
            if bad:
                return "condition1", {"body": j, "i": i, "point": [inst.q[i - 1] * v for v in bad[0]]}
    r = inst.q[d]
    for j, bj in enumerate(coords):
        for l, bl in enumerate(coords):
            if j == l:
                continue
            pts = scaled_points(minkowski_diff_bodies(bj, bl), r)
            if pts:
                return "condition2", {"bodies": [j, l], "point": [r * v for v in pts[0]]}
    return None


def _conjecture_sum(inst: ConjectureInstance, name: str, status: str) -> VerificationReport:
    failed = conjecture_conditions(inst)
    if failed is not None:
        raise ConditionFailed(f"{failed[0]} fails", failed[1])
    counts = [count_G(b, inst.lattice)[0] for b in inst.bodies]
    total = sum(counts)
    rhs = _prod(inst.q[:-1])
    witness = None if total <= rhs else {"counts": counts, "q": list(inst.q)}
    return VerificationReport(name, _verdict(total <= rhs), Fraction(total), Fraction(rhs), witness,
                              {"counts": counts, "status": status})


def verify_conjecture321(inst: ConjectureInstance) -> VerificationReport:
    status = "theorem" if inst.dim <= 2 else "conjectural"
    return _conjecture_sum(inst, "conjecture321", status)


def verify_thm411(inst: ConjectureInstance) -> VerificationReport:
    d = inst.dim
    q = inst.q
    # q_{d+1} | q_d | ... | q_3, i.e. 0-based indices 2..d
    for i in range(2, d):
        if q[i] % q[i + 1]:
            raise ConditionFailed("condition3 fails", {"q": list(q), "index": i + 1})
    return _conjecture_sum(inst, "thm411", "theorem")


def verify_cor411(k: Polytope, lat: Lattice, profile: MinimaProfile | None = None) -> VerificationReport:
    profile = profile or successive_minima(k, lat)
    chain = minimize_tail_chain(profile.q)
    g, _ = count_G(k, lat)
    witness = None if g <= chain.product else {"G": g, "chain": list(chain.n)}
    tail_divides = is_chain(profile.q, 3)
    return VerificationReport("cor411", _verdict(g <= chain.product), Fraction(g), Fraction(chain.product),
                              witness, {"chain": chain, "q": list(profile.q),
                                        "q_tail_divisible": tail_divides})


# --------------------------------------------------------------------------
# residue counting
# --------------------------------------------------------------------------

def monotonicity_sequence(points, sub: Subgroup, r_max: int) -> list:
    i = sub.rank
    return [Fraction(count_D_points(points, sub, r), r ** i) for r in range(1, r_max + 1)]


def check_monotonicity(k: Polytope, lat: Lattice, sub: Subgroup, r_max: int) -> VerificationReport:
    """D(K, r S) / r^rank(S) nonincreasing for r = 1..r_max.  Reported only:
    the property is not a theorem."""
    if r_max < 2:
        raise PreconditionViolated("r_max must be at least 2")
    _, pts = count_G(k, lat)
    seq = monotonicity_sequence(pts, sub, r_max)
    first = next((r for r in range(2, r_max + 1) if seq[r - 1] > seq[r - 2]), None)
    witness = None if first is None else {"r": first, "previous": seq[first - 2], "value": seq[first - 1]}
    lhs = seq[first - 1] if first else seq[-1]
    rhs = seq[first - 2] if first else seq[0]
    return VerificationReport("monotonicity", _verdict(first is None), lhs, rhs, witness,
                              {"sequence": seq, "rank": sub.rank, "status": "reported, not a theorem"})


def check_lemma421(k: Polytope, lat: Lattice, a: Sequence[Sequence[int]], i: int) -> VerificationReport:
    """If (K - K) meets L^d only inside L^i, then D(K, L^j) is the same for
    all j >= i (L^j spanned by a^1..a^j)."""
    d = k.dim
    a = tuple(tuple(int(v) for v in x) for x in a)
    if len(a) != d or exact.rank(a) != d:
        raise PreconditionViolated("a must be d independent lattice vectors")
    if not 0 <= i <= d:
        raise PreconditionViolated("i out of range")
    full = Subgroup(d, a)
    prefix = Subgroup(d, a[:i])
    dk = difference_body(lat.body_in_coords(k))
    for z in integer_points(dk):
        if full.contains(z) and not prefix.contains(z):
            raise ConditionFailed("hypothesis fails", {"point": list(z)})
    _, pts = count_G(k, lat)
    values = [count_D_points(pts, Subgroup(d, a[:j]), 1) for j in range(i, d + 1)]
    ok = len(set(values)) == 1
    witness = None if ok else {"values": values}
    return VerificationReport("lemma421", _verdict(ok), Fraction(values[-1]), Fraction(values[0]), witness,
                              {"values": values, "i": i})


@dataclass
class ChainLink:
    kind: str  # "bound", "equality" or "monotonicity"
    description: str
    left: Fraction
    right: Fraction
    holds: bool

    def to_json(self):
        return {"kind": self.kind, "link": self.description, "left": exact.fmt(self.left),
                "right": exact.fmt(self.right), "holds": self.holds}


def evaluate_thm421_chain(k: Polytope, lat: Lattice, profile: MinimaProfile | None = None) -> VerificationReport:
    """Evaluate every link of
    q_d^d >= D(K, q_d L) = D(K, q_d L^{d-1}) >= (q_d/q_{d-1})^{d-1} D(K, q_{d-1} L^{d-1}) = ... = c G(K).

    Equality links are consequences of proven lemmas, so a failure is
    reported as a violation; monotonicity links are hypotheses, and a failure
    only means the body lacks discrete monotonicity for that subgroup.
    """
    profile = profile or successive_minima(k, lat)
    d = k.dim
    q = profile.q
    g, pts = count_G(k, lat)

    def D(r, i):
        return count_D_points(pts, subgroup_prefix(profile.adapted, i), r)

    links = []
    top = D(q[d - 1], d)
    links.append(ChainLink("bound", f"q_{d}^{d} >= D(K, q_{d} L^{d})", Fraction(q[d - 1] ** d), Fraction(top),
                           q[d - 1] ** d >= top))
    for kk in range(d, 0, -1):
        qk = q[kk - 1]
        hi = D(qk, kk)
        lo = D(qk, kk - 1)
        links.append(ChainLink("equality", f"D(K, q_{kk} L^{kk}) = D(K, q_{kk} L^{kk - 1})",
                               Fraction(hi), Fraction(lo), hi == lo))
        if kk > 1:
            q_prev = q[kk - 2]
            # D(K, q_k L^{k-1}) / q_k^{k-1} >= D(K, q_{k-1} L^{k-1}) / q_{k-1}^{k-1}
            left = Fraction(lo, qk ** (kk - 1))
            nxt = D(q_prev, kk - 1)
            right = Fraction(nxt, q_prev ** (kk - 1))
            links.append(ChainLink("monotonicity",
                                   f"D(K, q_{kk} L^{kk - 1})/q_{kk}^{kk - 1} >= D(K, q_{kk - 1} L^{kk - 1})/q_{kk - 1}^{kk - 1}",
                                   left, right, left >= right))
    rhs = _prod(q)
    equalities_ok = all(l.holds for l in links if l.kind != "monotonicity")
    mono_ok = all(l.holds for l in links if l.kind == "monotonicity")
    if not equalities_ok:
        bad = next(l for l in links if not l.holds)
        verdict, witness = VIOLATED, {"link": bad.description}
    elif not mono_ok:
        bad = next(l for l in links if not l.holds)
        verdict, witness = INCONCLUSIVE, {"link": bad.description,
                                          "note": "body lacks discrete monotonicity for this subgroup"}
    else:
        verdict = _verdict(g <= rhs)
        witness = None if g <= rhs else {"G": g, "q": list(q)}
    return VerificationReport("thm421chain", verdict, Fraction(g), Fraction(rhs), witness,
                              {"links": links, "q": list(q)})
