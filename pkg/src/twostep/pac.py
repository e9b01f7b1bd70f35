"""Partial automatic continuity: sufficient condition, genericity, scans.

The sufficient condition asks for the commutator ideal to equal the center
and for a vector Y1 in V whose brackets against a complement basis are
linearly independent; the genericity test evaluates one fixed determinant
whose non-vanishing places the tensor in a Zariski-open set where the
sufficient condition holds.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .algebra import TwoStepAlgebra, central_v_directions, commutator_ideal
from .catalog import classify_dim_le6
from .linalg import Matrix, determinant, rank_kernel, symbolic_max_rank
from .scalars import QQ, MultiPoly


class PacError(ValueError):
    pass


def ad_formal(a: TwoStepAlgebra) -> list[list[MultiPoly]]:
    """The p x q matrix of ad_Y restricted to V, entries linear in the formal
    coordinates Y1..Yq: entry (k, j) = sum_i c^k_ij Y_i."""
    a.rational_constants()  # raises early on non-constant entries
    from .algebra import _to_fraction
    nv = a.q
    zero = MultiPoly(nv)
    m = [[zero for _ in range(a.q)] for _ in range(a.p)]
    for j in range(a.q):
        for i in range(a.q):
            if i == j:
                continue
            vec = a.c(i, j)
            for k in range(a.p):
                fk = _to_fraction(vec[k])
                if fk != 0:
                    m[k][j] = m[k][j] + MultiPoly.var(nv, i) * fk
    return m


@dataclass(frozen=True)
class SufficientResult:
    status: str                      # "holds" | "fails_proven" | "fails_probabilistic"
    y1: Optional[tuple] = None       # V-coordinates of the witness Y1
    basis: Optional[tuple] = None    # complement basis Y2..Yq (V-coordinates)
    max_rank: Optional[int] = None
    trials: int = 0

    @property
    def holds(self) -> bool:
        return self.status == "holds"


AD_SEARCH_RANDOM = 64


def sufficient_condition(a: TwoStepAlgebra, seed: int = 0) -> SufficientResult:
    """Decide the sufficient condition with a self-verifying witness.

    Holds iff the commutator ideal equals the center and max rank of
    ad_Y|V over Y in V is q - 1.  A concrete Y1 achieving the rank is
    searched and its complement basis re-verified exactly, so Holds is
    never probabilistic; Fails is proven when the exact minor path ran."""
    comm, comm_full = commutator_ideal(a)
    center_ok = comm_full and central_v_directions(a).dim == 0
    if not center_ok:
        return SufficientResult("fails_proven", max_rank=None)
    if a.q == 1:
        # no Y2..Yq needed; condition vacuous but commutator must be 0
        return SufficientResult("fails_proven")
    rank, exact = symbolic_max_rank(ad_formal(a), seed=seed)
    if rank < a.q - 1:
        return SufficientResult("fails_proven" if exact else "fails_probabilistic",
                                max_rank=rank, trials=0 if exact else 16)
    y1 = _find_max_rank_y(a, seed)
    if y1 is None:
        # symbolic rank says q-1 is reachable, but no witness found
        return SufficientResult("fails_probabilistic", max_rank=rank, trials=AD_SEARCH_RANDOM)
    f = a.field
    ker_rank, ker = rank_kernel(_ad_numeric(a, y1))
    basis = ker.complete_basis() if ker.dim == 1 else None
    if basis is None:
        return SufficientResult("fails_probabilistic", max_rank=rank, trials=AD_SEARCH_RANDOM)
    # self-verify: brackets of y1 against the complement basis are independent
    images = Matrix(f, [_bracket_v(a, y1, b) for b in basis])
    img_rank, _ = rank_kernel(images)
    if img_rank != a.q - 1:
        return SufficientResult("fails_probabilistic", max_rank=rank, trials=AD_SEARCH_RANDOM)
    return SufficientResult("holds", y1=tuple(y1), basis=tuple(tuple(b) for b in basis),
                            max_rank=rank)


def _ad_numeric(a: TwoStepAlgebra, y: list) -> Matrix:
    """p x q matrix of ad_y on V for concrete y."""
    f = a.field
    cols = [_bracket_v(a, y, [f.one if i == j else f.zero for i in range(a.q)])
            for j in range(a.q)]
    return Matrix(f, [[cols[j][k] for j in range(a.q)] for k in range(a.p)])


def _bracket_v(a: TwoStepAlgebra, x: list, y: list) -> list:
    f = a.field
    z = [f.zero] * a.p
    for (i, j), vec in a.brackets.items():
        coef = x[i] * y[j] - x[j] * y[i]
        if f.is_zero(coef):
            continue
        for k in range(a.p):
            z[k] = z[k] + coef * vec[k]
    return z


def _find_max_rank_y(a: TwoStepAlgebra, seed: int) -> Optional[list]:
    f = a.field
    units = [[f.one if i == k else f.zero for i in range(a.q)] for k in range(a.q)]
    candidates = list(units)
    for i in range(a.q):
        for j in range(i + 1, a.q):
            candidates.append([x + y for x, y in zip(units[i], units[j])])
    rng = random.Random(seed)
    for _ in range(AD_SEARCH_RANDOM):
        candidates.append([f.sample(rng) for _ in range(a.q)])
    for y in candidates:
        rank, _ = rank_kernel(_ad_numeric(a, y))
        if rank == a.q - 1:
            return y
    return None


def genericity_member(a: TwoStepAlgebra) -> bool:
    """The fixed determinant test for the Zariski-open set O: the
    (q-1) x (q-1) submatrix of ad_{e1} on span{e2..eq} with rows
    z1..z_{q-1} has nonzero determinant.

    The row choice is fixed once and for all; membership is sufficient for
    the sufficient condition but depends on this basis convention."""
    if a.p < a.q - 1:
        raise PacError(f"genericity test needs p >= q-1, got p={a.p}, q={a.q}")
    f = a.field
    m = Matrix(f, [[a.c(0, j)[k] for j in range(1, a.q)] for k in range(a.q - 1)])
    return not f.is_zero(determinant(m))


@dataclass(frozen=True)
class ScanReport:
    p: int
    q: int
    samples: int
    seed: int
    bound: int
    surjective: int = 0
    in_o: int = 0
    sufficient_holds: int = 0
    o_and_surjective: int = 0
    implication_violations: int = 0

    def to_json_dict(self) -> dict:
        d = {
            "p": self.p, "q": self.q, "samples": self.samples,
            "seed": self.seed, "bound": self.bound,
            "surjective": self.surjective, "in_O": self.in_o,
            "sufficient_holds": self.sufficient_holds,
            "O_and_surjective": self.o_and_surjective,
            "implication_violations": self.implication_violations,
        }
        if self.samples:
            d["fraction_in_O_and_surjective"] = round(self.o_and_surjective / self.samples, 6)
            d["fraction_sufficient"] = round(self.sufficient_holds / self.samples, 6)
        return d


def _sample_rng(seed: int, index: int) -> random.Random:
    digest = hashlib.sha256(f"{seed}:{index}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def sample_algebra(p: int, q: int, rng: random.Random, bound: int) -> TwoStepAlgebra:
    """Uniform nonzero integer numerators in [-bound, bound], denominators
    in [1, bound]."""
    brackets = {}
    nonzero = [n for n in range(-bound, bound + 1) if n != 0]
    for i in range(q):
        for j in range(i + 1, q):
            brackets[(i, j)] = tuple(Fraction(rng.choice(nonzero), rng.randint(1, bound))
                                     for _ in range(p))
    return TwoStepAlgebra(QQ, q, p, brackets)


def scan(p: int, q: int, samples: int, seed: int = 0, bound: int = 10) -> ScanReport:
    """Monte-Carlo scan over bracket tensors of type (p, q); deterministic
    per-sample seeds derived by hashing (seed, index)."""
    if q < 2 or p < 1 or p > q * (q - 1) // 2:
        raise PacError(f"(p,q)=({p},{q}) outside 1 <= p <= q(q-1)/2 with q >= 2")
    if samples < 1:
        raise PacError("samples must be >= 1")
    surj = in_o = holds = both = violations = 0
    for idx in range(samples):
        rng = _sample_rng(seed, idx)
        a = sample_algebra(p, q, rng, bound)
        _, full = commutator_ideal(a)
        if full:
            surj += 1
        member = genericity_member(a) if p >= q - 1 else False
        if member:
            in_o += 1
            if full:
                both += 1
        res = sufficient_condition(a, seed=idx)
        if res.holds:
            holds += 1
        if member and not res.holds:
            violations += 1
    return ScanReport(p=p, q=q, samples=samples, seed=seed, bound=bound,
                      surjective=surj, in_o=in_o, sufficient_holds=holds,
                      o_and_surjective=both, implication_violations=violations)


@dataclass(frozen=True)
class PacVerdict:
    status: str                      # "PAC_PROVEN" | "NOT_PAC" | "UNKNOWN"
    reason: str
    detail: dict = field(default_factory=dict)
    confidence: str = "exact"

    def to_json_dict(self) -> dict:
        return {"status": self.status, "reason": self.reason,
                "confidence": self.confidence, "detail": self.detail}


_THEOREM_C_MAX_HEIS = 24
_THEOREM_C_MAX_QUAT = 6


def _theorem_c_family(a: TwoStepAlgebra) -> Optional[str]:
    """Exact structure-constant match against the Heisenberg, quaternionic
    and octonionic families (no isomorphism search)."""
    from .catalog import heis, oct, quat
    if a.field is not QQ:
        return None
    if a.p == 1 and a.q % 2 == 0 and a.q >= 2:
        if a == heis(a.q // 2):
            return f"heis{a.q + 1}"
    if a.p == 3 and a.q % 4 == 0 and a.q >= 4:
        if a == quat(a.q // 4):
            return f"quat{a.q + 3}"
    if (a.p, a.q) == (7, 8) and a == oct():
        return "oct"
    return None


def pac_verdict(a: TwoStepAlgebra, seed: int = 0) -> PacVerdict:
    """Overall verdict, strongest applicable certificate first.

    NOT_PAC is only issued for algebras fingerprint-identified as N6."""
    if a.dim <= 6:
        try:
            name = classify_dim_le6(a)
        except Exception:
            name = "Unknown"
        if name == "N6":
            return PacVerdict("NOT_PAC", "N6-isomorphic",
                              {"classification": name})
        if name == "Abelian":
            return PacVerdict("PAC_PROVEN", "abelian",
                              {"classification": name})
        if name != "Unknown":
            return PacVerdict("PAC_PROVEN", "table-1-classification",
                              {"classification": name})
    res = sufficient_condition(a, seed=seed)
    if res.holds:
        f = a.field
        return PacVerdict("PAC_PROVEN", "sufficient-condition",
                          {"y1": [f.text(c) for c in res.y1],
                           "basis": [[f.text(c) for c in b] for b in res.basis]})
    fam = _theorem_c_family(a)
    if fam is not None:
        return PacVerdict("PAC_PROVEN", "theorem-C-family", {"family": fam})
    detail = {"sufficient_condition": res.status}
    if res.max_rank is not None:
        detail["max_ad_rank"] = res.max_rank
    conf = "exact" if res.status == "fails_proven" else f"probabilistic({res.trials})"
    return PacVerdict("UNKNOWN", "no-certificate", detail, confidence=conf)
