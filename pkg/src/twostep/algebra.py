"""2-step nilpotent Lie algebras via structure constants.

An algebra lives on V + Z with dim V = q, dim Z = p and bracket
[e_i, e_j] = sum_k c^k_ij z_k for 1 <= i < j <= q.  Z is central by
construction and the Jacobi identity holds automatically (every bracket is
central), so the only structural requirement on the tensor is antisymmetry,
which the storage convention (i < j only) enforces.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .linalg import Matrix, Subspace, rank_kernel
from .scalars import MultiPoly, QQ, QT, RatFun, ScalarError, field_by_name, sturm_real_roots, UniPoly


class AlgebraError(ValueError):
    pass


class TwoStepAlgebra:
    """Structure-constant presentation of a 2-step nilpotent Lie algebra.

    Immutable after construction.  ``brackets`` maps 0-based pairs (i, j)
    with i < j to length-p coefficient tuples; omitted pairs are zero.
    """

    __slots__ = ("field", "q", "p", "brackets", "label")

    def __init__(self, field, q: int, p: int, brackets: dict, label: Optional[str] = None):
        if q < 0 or p < 0:
            raise AlgebraError("negative dimension")
        clean = {}
        for (i, j), vec in brackets.items():
            if not (0 <= i < j < q):
                raise AlgebraError(f"bracket pair ({i + 1}, {j + 1}) must satisfy 1 <= i < j <= q={q}")
            vec = tuple(vec)
            if len(vec) != p:
                raise AlgebraError(f"bracket vector for ({i + 1}, {j + 1}) has length {len(vec)}, expected p={p}")
            if any(not field.is_zero(c) for c in vec):
                clean[(i, j)] = vec
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "brackets", clean)
        object.__setattr__(self, "label", label)

    def __setattr__(self, *a):
        raise AttributeError("TwoStepAlgebra is immutable")

    @property
    def dim(self) -> int:
        return self.q + self.p

    def c(self, i: int, j: int) -> tuple:
        """Coefficient vector of [e_i, e_j], antisymmetric in (i, j)."""
        if i == j:
            return (self.field.zero,) * self.p
        if i < j:
            return self.brackets.get((i, j), (self.field.zero,) * self.p)
        return tuple(-x for x in self.brackets.get((j, i), (self.field.zero,) * self.p))

    def element(self, v: Sequence, z: Sequence) -> "Element":
        return Element(self, list(v), list(z))

    def zero_element(self) -> "Element":
        f = self.field
        return Element(self, [f.zero] * self.q, [f.zero] * self.p)

    def basis_element(self, idx: int) -> "Element":
        f = self.field
        v = [f.zero] * self.q
        z = [f.zero] * self.p
        if idx < self.q:
            v[idx] = f.one
        else:
            z[idx - self.q] = f.one
        return Element(self, v, z)

    def same_shape(self, other: "TwoStepAlgebra") -> bool:
        return self.q == other.q and self.p == other.p and self.field.name == other.field.name

    def __eq__(self, other):
        return (isinstance(other, TwoStepAlgebra) and self.same_shape(other)
                and self.brackets == other.brackets)

    def rational_constants(self) -> dict:
        """Structure constants as Fractions; raises if any is non-constant."""
        out = {}
        for key, vec in self.brackets.items():
            out[key] = tuple(_to_fraction(c) for c in vec)
        return out

    def __repr__(self):
        tag = f", label={self.label!r}" if self.label else ""
        return f"TwoStepAlgebra(q={self.q}, p={self.p}, field={self.field!r}{tag})"


def _to_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, RatFun):
        if c.den.degree == 0 and c.num.degree <= 0:
            if c.is_zero():
                return Fraction(0)
            return c.num.coeffs[0] / c.den.coeffs[0]
    raise AlgebraError(f"structure constant {c!r} is not a rational constant")


class Element:
    """Vector in V + Z, coordinates over the algebra's field."""

    __slots__ = ("algebra", "v", "z")

    def __init__(self, algebra: TwoStepAlgebra, v: Sequence, z: Sequence):
        if len(v) != algebra.q or len(z) != algebra.p:
            raise AlgebraError("coordinate lengths do not match the algebra")
        self.algebra = algebra
        self.v = list(v)
        self.z = list(z)

    def coords(self) -> list:
        return self.v + self.z

    @staticmethod
    def from_coords(algebra: TwoStepAlgebra, coords: Sequence) -> "Element":
        coords = list(coords)
        if len(coords) != algebra.dim:
            raise AlgebraError("coordinate length mismatch")
        return Element(algebra, coords[:algebra.q], coords[algebra.q:])

    def __add__(self, other: "Element") -> "Element":
        return Element(self.algebra, [a + b for a, b in zip(self.v, other.v)],
                       [a + b for a, b in zip(self.z, other.z)])

    def __sub__(self, other: "Element") -> "Element":
        return Element(self.algebra, [a - b for a, b in zip(self.v, other.v)],
                       [a - b for a, b in zip(self.z, other.z)])

    def __neg__(self) -> "Element":
        return Element(self.algebra, [-a for a in self.v], [-a for a in self.z])

    def scale(self, s) -> "Element":
        return Element(self.algebra, [s * a for a in self.v], [s * a for a in self.z])

    def is_zero(self) -> bool:
        f = self.algebra.field
        return all(f.is_zero(a) for a in self.v + self.z)

    def __eq__(self, other):
        return (isinstance(other, Element) and self.v == other.v and self.z == other.z)

    def __repr__(self):
        f = self.algebra.field
        return "Element(" + ",".join(f.text(a) for a in self.v) + ";" + ",".join(f.text(a) for a in self.z) + ")"


def bracket(a: TwoStepAlgebra, x: Element, y: Element) -> Element:
    """[x, y]: bilinear, antisymmetric, lands in Z, sees only v-parts."""
    if x.algebra is not a and not a.same_shape(x.algebra):
        raise AlgebraError("element does not belong to the algebra")
    f = a.field
    z = [f.zero] * a.p
    for (i, j), vec in a.brackets.items():
        coef = x.v[i] * y.v[j] - x.v[j] * y.v[i]
        if f.is_zero(coef):
            continue
        for k in range(a.p):
            z[k] = z[k] + coef * vec[k]
    return Element(a, [f.zero] * a.q, z)


def commutator_ideal(a: TwoStepAlgebra) -> tuple[Subspace, bool]:
    """Span of all [e_i, e_j] inside Z-coordinates; flag: equals declared Z."""
    sub = Subspace(a.field, a.p, list(a.brackets.values()))
    return sub, sub.dim == a.p


def central_v_directions(a: TwoStepAlgebra) -> Subspace:
    """{v in V : [v, e_m] = 0 for all m}, as a subspace of V-coordinates."""
    rows = []
    for m in range(a.q):
        for k in range(a.p):
            rows.append([a.c(j, m)[k] for j in range(a.q)])
    if not rows:
        return Subspace(a.field, a.q, [[a.field.one if i == j else a.field.zero
                                        for j in range(a.q)] for i in range(a.q)])
    _, ker = rank_kernel(Matrix(a.field, rows))
    return ker


def center(a: TwoStepAlgebra) -> Subspace:
    """Center as a subspace of V + Z coordinates: declared Z plus the kernel
    of the ad action on V."""
    f = a.field
    vecs = []
    for kv in central_v_directions(a).basis:
        vecs.append(list(kv) + [f.zero] * a.p)
    for k in range(a.p):
        vecs.append([f.zero] * a.q + [f.one if i == k else f.zero for i in range(a.p)])
    return Subspace(f, a.dim, vecs)


def _coords_in_rref_basis(field, sub: Subspace, vec: Sequence) -> list:
    """Coefficients of vec in sub's RREF basis; raises if vec not in sub."""
    coeffs = [vec[p] for p in sub.pivots]
    residual = list(vec)
    for c, row in zip(coeffs, sub.basis):
        residual = [a - c * b for a, b in zip(residual, row)]
    if any(not field.is_zero(a) for a in residual):
        raise AlgebraError("vector not in subspace")
    return coeffs


def abelian_factor_split(a: TwoStepAlgebra) -> tuple["TwoStepAlgebra", int, Matrix]:
    """Split off the maximal abelian factor.

    Returns (core, k, T) where core has commutator ideal = center,
    a = core (+) R^k, and T is the basis change whose columns express the
    basis of direct_sum(core, abelian(k)) in the original coordinates:
    first the core V vectors, then the k abelian vectors, then the core Z
    vectors.
    """
    f = a.field
    comm, _ = commutator_ideal(a)
    comm_embedded = [[f.zero] * a.q + list(row) for row in comm.basis]
    cen = center(a)
    comm_sub = Subspace(f, a.dim, comm_embedded)
    abelian_vecs = comm_sub.extend_with(cen.basis)
    k = len(abelian_vecs)
    core_v_vecs = cen.complete_basis()
    # complement vectors of the center are standard V units (all Z units are
    # central); record their indices to read core brackets straight off a
    core_idx = []
    for vec in core_v_vecs:
        nz = [i for i, x in enumerate(vec) if not f.is_zero(x)]
        assert len(nz) == 1 and nz[0] < a.q
        core_idx.append(nz[0])
    qc = len(core_idx)
    pc = comm.dim
    core_brackets = {}
    for ai in range(qc):
        for bj in range(ai + 1, qc):
            vec = a.c(core_idx[ai], core_idx[bj])
            if all(f.is_zero(x) for x in vec):
                continue
            core_brackets[(ai, bj)] = tuple(_coords_in_rref_basis(f, comm, vec))
    core = TwoStepAlgebra(f, qc, pc, core_brackets)
    cols = core_v_vecs + abelian_vecs + comm_embedded
    t = Matrix(f, [[cols[j][i] for j in range(len(cols))] for i in range(a.dim)])
    return core, k, t


def direct_sum(a: TwoStepAlgebra, b: TwoStepAlgebra) -> TwoStepAlgebra:
    """Block direct sum; coordinates ordered (V_a, V_b, Z_a, Z_b)."""
    if a.field.name != b.field.name:
        raise AlgebraError("direct sum over mismatched fields")
    f = a.field
    brackets = {}
    for (i, j), vec in a.brackets.items():
        brackets[(i, j)] = tuple(vec) + (f.zero,) * b.p
    for (i, j), vec in b.brackets.items():
        brackets[(i + a.q, j + a.q)] = (f.zero,) * a.p + tuple(vec)
    return TwoStepAlgebra(f, a.q + b.q, a.p + b.p, brackets)


def abelian(field, n: int) -> TwoStepAlgebra:
    return TwoStepAlgebra(field, n, 0, {}, label=None)


def j_map(a: TwoStepAlgebra) -> list[Matrix]:
    """Skew matrices J^1..J^p with (J^k)_{ji} = c^k_{ij} in the declared
    orthonormal basis; [x, y] = sum_k <J^k x, y> z_k."""
    f = a.field
    mats = [[[f.zero] * a.q for _ in range(a.q)] for _ in range(a.p)]
    for (i, j), vec in a.brackets.items():
        for k in range(a.p):
            mats[k][j][i] = vec[k]
            mats[k][i][j] = -vec[k]
    return [Matrix(f, m) for m in mats]


def j_of(a: TwoStepAlgebra, zcoords: Sequence) -> Matrix:
    """j(Z) = sum_k z_k J^k for concrete Z coordinates."""
    f = a.field
    out = [[f.zero] * a.q for _ in range(a.q)]
    for (i, j), vec in a.brackets.items():
        s = sum((zc * ck for zc, ck in zip(zcoords, vec)), f.zero)
        out[j][i] = out[j][i] + s
        out[i][j] = out[i][j] - s
    return Matrix(f, out)


def is_heisenberg_type(a: TwoStepAlgebra) -> bool:
    """Symbolic check of j(Z)^2 = -|Z|^2 id_V as a polynomial identity in
    formal z_1..z_p.  Requires rational structure constants."""
    if a.p == 0 or a.q == 0:
        return False
    consts = a.rational_constants()
    nv = a.p
    zero = MultiPoly(nv)
    s = [[zero for _ in range(a.q)] for _ in range(a.q)]
    for (i, j), vec in consts.items():
        for k in range(a.p):
            if vec[k] == 0:
                continue
            zk = MultiPoly.var(nv, k) * vec[k]
            s[j][i] = s[j][i] + zk
            s[i][j] = s[i][j] - zk
    norm = zero
    for k in range(nv):
        norm = norm + MultiPoly.var(nv, k) * MultiPoly.var(nv, k)
    for i in range(a.q):
        for j in range(a.q):
            entry = zero
            for m in range(a.q):
                entry = entry + s[i][m] * s[m][j]
            if i == j:
                entry = entry + norm
            if not entry.is_zero():
                return False
    return True


@dataclass(frozen=True)
class NonsingularityVerdict:
    kind: str  # "nonsingular" | "singular" | "unknown"
    certificate: Optional[str] = None
    witness_z: Optional[tuple] = None
    witness_x: Optional[tuple] = None
    samples: int = 0

    def describe(self, field) -> str:
        if self.kind == "nonsingular":
            return f"nonsingular ({self.certificate})"
        if self.kind == "singular":
            zt = ",".join(field.text(c) for c in self.witness_z)
            xt = ",".join(field.text(c) for c in self.witness_x)
            return f"singular (witness Z=({zt}), X=({xt}))"
        return f"unknown (searched {self.samples} candidates)"


NONSING_RANDOM_SAMPLES = 256


def nonsingularity(a: TwoStepAlgebra, seed: int = 0) -> NonsingularityVerdict:
    """Three-valued nonsingularity verdict on the abelian-factor-free core.

    Nonsingular certificates: H-type; p = 1 with trivial j(Z_1) kernel;
    p = 2 with q even and definite Pfaffian binary form (Sturm).  Singular
    witnesses (Z, X) with j(Z)X = 0 are verified exactly before reporting.
    """
    core, k, _ = abelian_factor_split(a)
    if k > 0:
        a = core
    f = a.field
    if a.p == 0:
        # abelian core: vacuously nonsingular (no non-central X exists)
        return NonsingularityVerdict("nonsingular", certificate="abelian")
    rational = _has_rational_constants(a)
    if rational and is_heisenberg_type(a):
        return NonsingularityVerdict("nonsingular", certificate="H-type")
    if a.p == 1:
        rank, ker = rank_kernel(j_of(a, [f.one]))
        if ker.dim == 0:
            return NonsingularityVerdict("nonsingular", certificate="p=1, j(Z1) injective")
        x = ker.basis[0]
        return NonsingularityVerdict("singular", witness_z=(f.one,), witness_x=tuple(x))
    if rational and a.p == 2 and a.q % 2 == 0 and _pfaffian_form_definite(a):
        return NonsingularityVerdict("nonsingular", certificate="p=2 Pfaffian form definite")
    # witness search: basis Z vectors, pairwise sums, then seeded random
    import random as _random
    rng = _random.Random(seed)
    candidates = []
    units = [[f.one if i == k2 else f.zero for i in range(a.p)] for k2 in range(a.p)]
    candidates.extend(units)
    for i in range(a.p):
        for j in range(i + 1, a.p):
            candidates.append([x + y for x, y in zip(units[i], units[j])])
    for _ in range(NONSING_RANDOM_SAMPLES):
        candidates.append([f.sample(rng) for _ in range(a.p)])
    tried = 0
    for zc in candidates:
        if all(f.is_zero(c) for c in zc):
            continue
        tried += 1
        _, ker = rank_kernel(j_of(a, zc))
        for x in ker.basis:
            jx = j_of(a, zc).apply(x)
            if all(f.is_zero(c) for c in jx):  # exact re-verification
                return NonsingularityVerdict("singular", witness_z=tuple(zc), witness_x=tuple(x))
    return NonsingularityVerdict("unknown", samples=tried)


def _pfaffian_form_definite(a: TwoStepAlgebra) -> bool:
    """True iff Pf(z1 J^1 + z2 J^2) has no real projective zero."""
    from .linalg import pfaffian
    consts = a.rational_constants()
    nv = 2
    zero = MultiPoly(nv)
    s = [[zero for _ in range(a.q)] for _ in range(a.q)]
    for (i, j), vec in consts.items():
        for k in range(2):
            if vec[k] == 0:
                continue
            zk = MultiPoly.var(nv, k) * vec[k]
            s[j][i] = s[j][i] + zk
            s[i][j] = s[i][j] - zk

    class _PolyField:
        name = "Q[z]"

        @property
        def zero(self):
            return MultiPoly(nv)

        @property
        def one(self):
            return MultiPoly.const(nv, 1)

        def is_zero(self, x):
            return x.is_zero()

    pf = pfaffian(Matrix(_PolyField(), s))
    if pf.is_zero():
        return False
    d = a.q // 2
    # dehomogenize: P(1, t) and the z2^d coefficient P(0, 1)
    top = pf.terms.get((0, d), Fraction(0))
    if top == 0:
        return False
    coeffs = [Fraction(0)] * (d + 1)
    for (e1, e2), c in pf.terms.items():
        coeffs[e2] += c
    poly = UniPoly(coeffs)
    return sturm_real_roots(poly) == 0


def is_derivation(a: TwoStepAlgebra, d: Matrix) -> bool:
    """D[x,y] = [Dx,y] + [x,Dy] on all basis pairs (bilinearity suffices)."""
    if d.rows != a.dim or d.cols != a.dim:
        raise AlgebraError("derivation matrix size mismatch")
    basis = [a.basis_element(i) for i in range(a.dim)]
    images = [Element.from_coords(a, d.apply(e.coords())) for e in basis]
    for i in range(a.dim):
        for j in range(i + 1, a.dim):
            lhs = Element.from_coords(a, d.apply(bracket(a, basis[i], basis[j]).coords()))
            rhs = bracket(a, images[i], basis[j]) + bracket(a, basis[i], images[j])
            if lhs != rhs:
                return False
    return True


def is_homomorphism(a: TwoStepAlgebra, b: TwoStepAlgebra, f: Matrix) -> bool:
    """f[e_i, e_j] = [f e_i, f e_j] for all basis pairs of a."""
    if f.rows != b.dim or f.cols != a.dim:
        raise AlgebraError("map matrix size mismatch")
    basis = [a.basis_element(i) for i in range(a.dim)]
    images = [Element.from_coords(b, f.apply(e.coords())) for e in basis]
    for i in range(a.dim):
        for j in range(i + 1, a.dim):
            lhs = Element.from_coords(b, f.apply(bracket(a, basis[i], basis[j]).coords()))
            rhs = bracket(b, images[i], images[j])
            if lhs != rhs:
                return False
    return True


def is_automorphism(a: TwoStepAlgebra, f: Matrix) -> bool:
    if f.rows != a.dim or f.cols != a.dim:
        return False
    rank, _ = rank_kernel(f)
    return rank == a.dim and is_homomorphism(a, a, f)


@dataclass(frozen=True)
class AlgebraReport:
    dim: int
    declared_type: tuple[int, int]       # (p, q) as declared
    commutator_dim: int
    commutator_equals_z: bool
    center_dim: int
    abelian_factor_dim: int
    core_type: tuple[int, int]           # (p', q') of the core
    h_type: bool
    nonsingular: NonsingularityVerdict


def analyze(a: TwoStepAlgebra, seed: int = 0) -> AlgebraReport:
    comm, flag = commutator_ideal(a)
    cen = center(a)
    core, k, _ = abelian_factor_split(a)
    return AlgebraReport(
        dim=a.dim,
        declared_type=(a.p, a.q),
        commutator_dim=comm.dim,
        commutator_equals_z=flag,
        center_dim=cen.dim,
        abelian_factor_dim=k,
        core_type=(core.p, core.q),
        h_type=is_heisenberg_type(a) if _has_rational_constants(a) else False,
        nonsingular=nonsingularity(a, seed=seed),
    )


def _has_rational_constants(a: TwoStepAlgebra) -> bool:
    try:
        a.rational_constants()
        return True
    except AlgebraError:
        return False


# ---------------------------------------------------------------------------
# structure-constant file format
# ---------------------------------------------------------------------------

SCHEMA_VERSION = 1


def to_json_dict(a: TwoStepAlgebra) -> dict:
    doc = {
        "field": a.field.name,
        "q": a.q,
        "p": a.p,
        "brackets": [
            {"i": i + 1, "j": j + 1, "z": [a.field.text(c) for c in vec]}
            for (i, j), vec in sorted(a.brackets.items())
        ],
    }
    if a.label is not None:
        doc["label"] = a.label
    return doc


def to_json_text(a: TwoStepAlgebra) -> str:
    return json.dumps(to_json_dict(a), sort_keys=True, separators=(",", ": "), indent=1) + "\n"


def from_json_dict(doc: dict) -> TwoStepAlgebra:
    try:
        field = field_by_name(doc["field"])
        q = int(doc["q"])
        p = int(doc["p"])
        entries = doc.get("brackets", [])
        label = doc.get("label")
    except (KeyError, TypeError, ValueError) as exc:
        raise AlgebraError(f"malformed structure-constant document: {exc}") from None
    brackets = {}
    for ent in entries:
        i, j = int(ent["i"]), int(ent["j"])
        if not (1 <= i < j <= q):
            raise AlgebraError(f"bracket pair (i={i}, j={j}) violates 1 <= i < j <= q={q}")
        if (i - 1, j - 1) in brackets:
            raise AlgebraError(f"duplicate bracket pair (i={i}, j={j})")
        zs = ent["z"]
        if len(zs) != p:
            raise AlgebraError(f"bracket (i={i}, j={j}) has {len(zs)} coefficients, expected p={p}")
        try:
            brackets[(i - 1, j - 1)] = tuple(field.parse(s) for s in zs)
        except ScalarError as exc:
            raise AlgebraError(f"bracket (i={i}, j={j}): {exc}") from None
    return TwoStepAlgebra(field, q, p, brackets, label=label)


def from_json_text(text: str) -> TwoStepAlgebra:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AlgebraError(f"invalid JSON: {exc}") from None
    return from_json_dict(doc)
