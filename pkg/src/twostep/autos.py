"""Automorphism-side algorithms.

Central automorphisms, dilations, the constructive semidirect decomposition,
additive-but-not-linear Lie ring maps over Q(t) (differential-operator
matrices), the N6 counterexample witness, and the transitivity constructions
on Heisenberg and quaternionic Heisenberg algebras.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional, Sequence, Union

from .algebra import (AlgebraError, Element, TwoStepAlgebra, bracket, center,
                      commutator_ideal, is_automorphism, is_homomorphism, j_map)
from .linalg import Matrix, Subspace, inverse, rank_kernel
from .scalars import QT, Quaternion, RatFun, ScalarError, ratfun_from_text, ratfun_to_text


class AutoError(ValueError):
    pass


class LinearMap:
    """Linear map between 2-step algebras; coordinates ordered V then Z."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: TwoStepAlgebra, target: TwoStepAlgebra, matrix: Matrix):
        if matrix.rows != target.dim or matrix.cols != source.dim:
            raise AutoError("matrix size does not match algebras")
        self.source = source
        self.target = target
        self.matrix = matrix

    @staticmethod
    def identity(a: TwoStepAlgebra) -> "LinearMap":
        return LinearMap(a, a, Matrix.identity(a.field, a.dim))

    def apply_element(self, x: Element) -> Element:
        return Element.from_coords(self.target, self.matrix.apply(x.coords()))

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self after other."""
        return LinearMap(other.source, self.target, self.matrix @ other.matrix)

    def inverse(self) -> "LinearMap":
        return LinearMap(self.target, self.source, inverse(self.matrix))

    def is_automorphism(self) -> bool:
        return self.source is self.target and is_automorphism(self.source, self.matrix)

    def __eq__(self, other):
        return isinstance(other, LinearMap) and self.matrix == other.matrix

    def __repr__(self):
        return f"LinearMap({self.matrix!r})"


# ---------------------------------------------------------------------------
# differential-operator entries: additive non-linear maps over Q(t)
# ---------------------------------------------------------------------------

class DiffOp:
    """Finite sum of c_k * D^k acting on Q(t), D the formal d/dt.

    Additive and Q-linear by construction; Q(t)-linear iff only k = 0."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[int, RatFun] | None = None):
        clean = {}
        for k, c in (coeffs or {}).items():
            if not c.is_zero():
                clean[k] = c
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, *a):
        raise AttributeError("DiffOp is immutable")

    @staticmethod
    def scalar(c: RatFun) -> "DiffOp":
        return DiffOp({0: c})

    @staticmethod
    def d(order: int = 1) -> "DiffOp":
        return DiffOp({order: RatFun.const(1)})

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_scalar(self) -> bool:
        return all(k == 0 for k in self.coeffs)

    def __eq__(self, other):
        return isinstance(other, DiffOp) and self.coeffs == other.coeffs

    def __add__(self, other: "DiffOp") -> "DiffOp":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, RatFun.const(0)) + c
        return DiffOp(out)

    def __neg__(self):
        return DiffOp({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def compose(self, other: "DiffOp") -> "DiffOp":
        """self after other, expanded by the Leibniz rule:
        D^a (d * x) = sum_m C(a,m) d^(m) x^(a-m)."""
        out: dict[int, RatFun] = {}
        for a, c in self.coeffs.items():
            for b, d in other.coeffs.items():
                dm = d
                for m in range(a + 1):
                    coef = c * comb(a, m) * dm
                    k = a - m + b
                    out[k] = out.get(k, RatFun.const(0)) + coef
                    dm = dm.derive()
        return DiffOp(out)

    def apply(self, x: RatFun) -> RatFun:
        total = RatFun.const(0)
        for k, c in self.coeffs.items():
            y = x
            for _ in range(k):
                y = y.derive()
            total = total + c * y
        return total

    def __repr__(self):
        return f"DiffOp({diffop_to_text(self)!r})"


def diffop_to_text(op: DiffOp) -> str:
    if op.is_zero():
        return "0"
    parts = []
    for k in sorted(op.coeffs):
        c = ratfun_to_text(op.coeffs[k])
        if k == 0:
            parts.append(c)
        elif k == 1:
            parts.append(f"{c}*D")
        else:
            parts.append(f"{c}*D^{k}")
    return " + ".join(parts)


def diffop_from_text(text: str) -> DiffOp:
    text = text.strip()
    if text == "0":
        return DiffOp()
    coeffs: dict[int, RatFun] = {}
    for part in text.split(" + "):
        bits = part.split("*D")
        if len(bits) == 1:
            k = 0
            c = ratfun_from_text(bits[0])
        else:
            c = ratfun_from_text(bits[0])
            k = int(bits[1][1:]) if bits[1].startswith("^") else 1
            if bits[1] and not bits[1].startswith("^"):
                raise ScalarError(f"bad operator term {part!r}")
        coeffs[k] = coeffs.get(k, RatFun.const(0)) + c
    return DiffOp(coeffs)


class AdditiveMap:
    """(q+p) x (q+p) matrix of DiffOp entries over a Q(t) algebra.

    Represents an additive, Q-linear self-map of the algebra that need not
    be Q(t)-linear (the computable model of a discontinuous additive map)."""

    __slots__ = ("algebra", "entries")

    def __init__(self, algebra: TwoStepAlgebra, entries: Sequence[Sequence[DiffOp]]):
        if algebra.field is not QT:
            raise AutoError("AdditiveMap requires the Q(t) base field")
        self.algebra = algebra
        self.entries = [list(row) for row in entries]
        n = algebra.dim
        if len(self.entries) != n or any(len(r) != n for r in self.entries):
            raise AutoError("operator matrix size mismatch")

    @staticmethod
    def identity(a: TwoStepAlgebra) -> "AdditiveMap":
        one = DiffOp.scalar(RatFun.const(1))
        zero = DiffOp()
        return AdditiveMap(a, [[one if i == j else zero for j in range(a.dim)]
                               for i in range(a.dim)])

    def is_linear(self) -> bool:
        return all(e.is_scalar() for row in self.entries for e in row)

    def apply_element(self, x: Element) -> Element:
        coords = x.coords()
        out = [RatFun.const(0)] * self.algebra.dim
        for i, row in enumerate(self.entries):
            for j, op in enumerate(row):
                if not op.is_zero():
                    out[i] = out[i] + op.apply(coords[j])
        return Element.from_coords(self.algebra, out)

    def compose(self, other: "AdditiveMap") -> "AdditiveMap":
        n = self.algebra.dim
        out = [[DiffOp() for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for k in range(n):
                a = self.entries[i][k]
                if a.is_zero():
                    continue
                for j in range(n):
                    b = other.entries[k][j]
                    if not b.is_zero():
                        out[i][j] = out[i][j] + a.compose(b)
        return AdditiveMap(self.algebra, out)

    def __add__(self, other: "AdditiveMap") -> "AdditiveMap":
        return AdditiveMap(self.algebra,
                           [[a + b for a, b in zip(r1, r2)]
                            for r1, r2 in zip(self.entries, other.entries)])

    def __eq__(self, other):
        return isinstance(other, AdditiveMap) and self.entries == other.entries

    def serialize(self) -> list[list[str]]:
        return [[diffop_to_text(e) for e in row] for row in self.entries]

    def __repr__(self):
        return f"AdditiveMap({self.serialize()!r})"


MapLike = Union[LinearMap, AdditiveMap]


# ---------------------------------------------------------------------------
# central automorphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CentralSpec:
    """mu: V-coordinates -> Z-coordinates, extended by zero on Z.

    The extension by zero makes mu vanish on the commutator ideal (which
    sits inside Z), so id + mu is automatically invertible with inverse
    id - mu."""

    algebra: TwoStepAlgebra
    mu: object  # Matrix p x q, or p x q grid of DiffOp

    def is_operator(self) -> bool:
        return not isinstance(self.mu, Matrix)


def is_central(a: TwoStepAlgebra, f: MapLike, trials: int = 50, seed: int = 0) -> bool:
    """(f - id) maps everything into the center.

    Basis vectors suffice for LinearMaps; for AdditiveMaps random scalar
    multiples of basis vectors are additionally checked (the map is not
    determined by basis values)."""
    cen = center(a)
    probes = [a.basis_element(i) for i in range(a.dim)]
    if isinstance(f, AdditiveMap):
        rng = random.Random(seed)
        for _ in range(trials):
            i = rng.randrange(a.dim)
            s = a.field.sample(rng)
            probes.append(a.basis_element(i).scale(s))
    for x in probes:
        diff = f.apply_element(x) - x
        if not cen.contains(diff.coords()):
            return False
    return True


def make_central(a: TwoStepAlgebra, spec: CentralSpec) -> MapLike:
    """f = id + mu with verified inverse id - mu (Z-valued mu squares to 0)."""
    f = a.field
    if isinstance(spec.mu, Matrix):
        if spec.mu.rows != a.p or spec.mu.cols != a.q:
            raise AutoError("mu must map V-coordinates to Z-coordinates")
        m = Matrix.identity(f, a.dim)
        data = [list(r) for r in m.data]
        for k in range(a.p):
            for j in range(a.q):
                data[a.q + k][j] = data[a.q + k][j] + spec.mu.data[k][j]
        out = LinearMap(a, a, Matrix(f, data))
        inv = Matrix(f, [[x - (spec.mu.data[i - a.q][j] if i >= a.q and j < a.q else f.zero)
                          for j, x in enumerate(row)]
                         for i, row in enumerate(Matrix.identity(f, a.dim).data)])
        check = out.matrix @ inv
        if check != Matrix.identity(f, a.dim):
            raise AutoError("central spec failed the inverse check")
        return out
    # operator-valued mu over Q(t)
    grid = spec.mu
    if len(grid) != a.p or any(len(r) != a.q for r in grid):
        raise AutoError("mu operator grid must be p x q")
    out_map = AdditiveMap.identity(a)
    entries = [list(r) for r in out_map.entries]
    for k in range(a.p):
        for j in range(a.q):
            entries[a.q + k][j] = entries[a.q + k][j] + grid[k][j]
    fwd = AdditiveMap(a, entries)
    back = [list(r) for r in AdditiveMap.identity(a).entries]
    for k in range(a.p):
        for j in range(a.q):
            back[a.q + k][j] = back[a.q + k][j] - grid[k][j]
    if fwd.compose(AdditiveMap(a, back)) != AdditiveMap.identity(a):
        raise AutoError("central spec failed the inverse check")
    return fwd


def dilation(a: TwoStepAlgebra, lam) -> LinearMap:
    """X + Z -> lam X + lam^2 Z; an automorphism for every lam != 0."""
    f = a.field
    if f.is_zero(lam):
        raise AutoError("dilation scalar must be nonzero")
    diag = [lam] * a.q + [lam * lam] * a.p
    m = Matrix(f, [[diag[i] if i == j else f.zero for j in range(a.dim)]
                   for i in range(a.dim)])
    out = LinearMap(a, a, m)
    assert out.is_automorphism()
    return out


# ---------------------------------------------------------------------------
# semidirect decomposition of Aut(N)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SemidirectDecomposition:
    central: LinearMap       # mu, passes is_central
    v_preserving: LinearMap  # fbar, zero lower-left block
    unique: bool             # true iff Z = commutator ideal

    def recompose(self) -> LinearMap:
        return self.central.compose(self.v_preserving)


def semidirect_decompose(a: TwoStepAlgebra, f: LinearMap) -> SemidirectDecomposition:
    """Factor f = mu o fbar with mu central and fbar(V) = V.

    Construction: h = f|Z; f1 = id + mu0 with mu0(X) = h^-1(pi_Z f(X));
    f2(X+Z) = pi_V f(X) + f(Z); then f = f2 o f1, and the central-first
    order is (f2 f1 f2^-1) o f2 by normality of the central subgroup.
    Unique exactly when Z is the commutator ideal."""
    if not f.is_automorphism():
        raise AutoError("semidirect decomposition needs a verified automorphism")
    fld = a.field
    q, p = a.q, a.p
    m = f.matrix
    # f must preserve Z (automatic when Z = commutator ideal)
    for i in range(q):
        for j in range(q, q + p):
            if not fld.is_zero(m.data[i][j]):
                raise AutoError("f does not preserve the declared Z")
    h = Matrix(fld, [[m.data[q + i][q + j] for j in range(p)] for i in range(p)])
    try:
        h_inv = inverse(h)
    except Exception:
        raise AutoError("f restricted to Z is not invertible") from None
    pi_z_fv = Matrix(fld, [[m.data[q + i][j] for j in range(q)] for i in range(p)])
    mu0 = h_inv @ pi_z_fv
    f1 = make_central(a, CentralSpec(a, mu0))
    f2_data = [[m.data[i][j] if (i < q) == (j < q) else fld.zero
                for j in range(a.dim)] for i in range(a.dim)]
    f2 = LinearMap(a, a, Matrix(fld, f2_data))
    assert isinstance(f1, LinearMap)
    mu = f2.compose(f1).compose(f2.inverse())
    comm, full = commutator_ideal(a)
    out = SemidirectDecomposition(central=mu, v_preserving=f2, unique=full)
    # the construction is proof-backed; re-verify anyway
    if mu.compose(f2).matrix != m:
        raise AutoError("decomposition failed to recompose")
    if not is_central(a, mu):
        raise AutoError("central factor failed is_central")
    return out


# ---------------------------------------------------------------------------
# the N6 counterexample witness over Q(t)
# ---------------------------------------------------------------------------

def n6_algebra_qt() -> TwoStepAlgebra:
    """N6 = heis3 over the dual numbers, presented as a 6-dim algebra over
    Q(t): basis X1 = X, X2 = Y, X3 = eps Y, X4 = -eps X, Z1 = Z, Z2 = eps Z
    with [X1,X2] = Z1, [X1,X3] = Z2, [X2,X4] = Z2."""
    one = RatFun.const(1)
    zero = RatFun.const(0)
    return TwoStepAlgebra(QT, 4, 2, {
        (0, 1): (one, zero),
        (0, 2): (zero, one),
        (1, 3): (zero, one),
    }, label="N6")


def n6_witness() -> tuple[TwoStepAlgebra, AdditiveMap]:
    """The additive Lie ring automorphism f(xX + yY + zZ) =
    sigma(x)X + sigma(y)Y + sigma(z)Z with sigma(a + b eps) = a + (b + a')eps
    and the derivation a' = da/dt.

    In coordinates: x3 -> x3 + D x2, x4 -> x4 - D x1, z2 -> z2 + D z1,
    identity elsewhere.  Non-linearity witness: f(t X1) - t f(X1) = -X4."""
    a = n6_algebra_qt()
    f = AdditiveMap.identity(a)
    entries = [list(r) for r in f.entries]
    d = DiffOp.d()
    entries[2][1] = entries[2][1] + d       # x3 += x2'
    entries[3][0] = entries[3][0] - d       # x4 -= x1'
    entries[5][4] = entries[5][4] + d       # z2 += z1'
    return a, AdditiveMap(a, entries)


def n6_nonlinearity_residual(a: TwoStepAlgebra, f: AdditiveMap) -> Element:
    """f(t X1) - t f(X1); equals -X4 exactly for the witness map."""
    t = RatFun.t()
    x1 = a.basis_element(0)
    return f.apply_element(x1.scale(t)) - f.apply_element(x1).scale(t)


def additive_bracket_check(a: TwoStepAlgebra, f: AdditiveMap,
                           trials: int = 100, seed: int = 0) -> bool:
    """Randomized exact check that f is additive and bracket-preserving.

    Non-linear maps are not determined by basis values, so this is a seeded
    necessary-condition test, not a proof."""
    rng = random.Random(seed)
    fld = a.field
    for _ in range(trials):
        x = Element(a, [fld.sample(rng) for _ in range(a.q)],
                    [fld.sample(rng) for _ in range(a.p)])
        y = Element(a, [fld.sample(rng) for _ in range(a.q)],
                    [fld.sample(rng) for _ in range(a.p)])
        if f.apply_element(x + y) != f.apply_element(x) + f.apply_element(y):
            return False
        if f.apply_element(bracket(a, x, y)) != bracket(a, f.apply_element(x), f.apply_element(y)):
            return False
    return True


# ---------------------------------------------------------------------------
# complex conjugation on heis3(C)
# ---------------------------------------------------------------------------

def conjugation_heis3C(a: TwoStepAlgebra) -> LinearMap:
    """The R-linear map induced by complex conjugation on the realification
    basis {X, iX, Y, iY, Z, iZ}: fixes the real directions, negates the
    imaginary ones."""
    f = a.field
    if (a.q, a.p) != (4, 2):
        raise AutoError("expected the 6-dim realification of heis3(C)")
    signs = [1, -1, 1, -1, 1, -1]
    m = Matrix(f, [[f.from_int(signs[i]) if i == j else f.zero
                    for j in range(6)] for i in range(6)])
    out = LinearMap(a, a, m)
    if not out.is_automorphism():
        raise AutoError("conjugation failed the automorphism check")
    return out


# ---------------------------------------------------------------------------
# transitivity constructions
# ---------------------------------------------------------------------------

def sp_right_mult(a: TwoStepAlgebra, u: Quaternion) -> LinearMap:
    """Right multiplication by a unit quaternion on each H-block of V of the
    quaternionic Heisenberg algebra; identity on Z.

    Commutes with j(Z1), j(Z2), j(Z3) because left and right multiplications
    commute; composition reverses: R_u o R_u' = R_{u'u}."""
    if a.p != 3 or a.q % 4 != 0:
        raise AutoError("expected a quaternionic Heisenberg algebra (q = 4n, p = 3)")
    if u.norm_sq() != 1:
        raise AutoError(f"right multiplication needs |u|^2 = 1, got {u.norm_sq()}")
    f = a.field
    n = a.q // 4
    va, vb, vc, vd = u.a, u.b, u.c, u.d
    # columns are images of 1, i, j, k under x -> x*u
    block = [
        [va, -vb, -vc, -vd],
        [vb, va, vd, -vc],
        [vc, -vd, va, vb],
        [vd, vc, -vb, va],
    ]
    m = [[f.zero] * a.dim for _ in range(a.dim)]
    for blk in range(n):
        for i in range(4):
            for j in range(4):
                m[4 * blk + i][4 * blk + j] = Fraction(block[i][j])
    for k in range(a.p):
        m[a.q + k][a.q + k] = f.one
    out = LinearMap(a, a, Matrix(f, m))
    for jk in j_map(a):
        if out.matrix @ _embed_v(a, jk) != _embed_v(a, jk) @ out.matrix:
            raise AutoError("right multiplication does not commute with the j-matrices")
    if not out.is_automorphism():
        raise AutoError("right multiplication failed the automorphism check")
    return out


def _embed_v(a: TwoStepAlgebra, jm: Matrix) -> Matrix:
    """Pad a q x q matrix on V by zeros on Z to compare compositions."""
    f = a.field
    m = [[f.zero] * a.dim for _ in range(a.dim)]
    for i in range(a.q):
        for j in range(a.q):
            m[i][j] = jm.data[i][j]
    return Matrix(f, m)


def symplectic_send(a: TwoStepAlgebra, v: Sequence) -> LinearMap:
    """Automorphism g of heis_{2n+1} with g(X1) = v and g(Z) = Z.

    Completes v to a symplectic basis for omega(x, y) = <J1 x, y> with all
    pairings normalized to omega(e_i, f_i) = 1, so the multiplier is 1 and
    no square roots are needed."""
    f = a.field
    if a.p != 1 or a.q % 2 != 0:
        raise AutoError("expected a Heisenberg algebra (q = 2n, p = 1)")
    v = list(v)
    if len(v) != a.q:
        raise AutoError("target vector must have q coordinates")
    if all(f.is_zero(c) for c in v):
        raise AutoError("target vector must be nonzero")
    j1 = j_map(a)[0]

    def omega(x, y):
        return sum((c * d for c, d in zip(j1.apply(x), y)), f.zero)

    units = [[f.one if i == k else f.zero for i in range(a.q)] for k in range(a.q)]
    pairs = []
    pool = units

    def complete(first, candidates):
        w = next((c for c in candidates if not f.is_zero(omega(first, c))), None)
        if w is None:
            raise AutoError("symplectic form degenerate on the working space")
        scale = f.one / omega(first, w)
        w = [scale * c for c in w]
        pairs.append((first, w))
        # project candidates onto the omega-perp of span(first, w)
        projected = [[uc - omega(u, w) * fc + omega(u, first) * wc
                      for uc, fc, wc in zip(u, first, w)] for u in candidates]
        rest = Subspace(f, a.q, []).extend_with(projected)
        if rest:
            complete(rest[0], rest)

    complete(v, pool)
    if len(pairs) != a.q // 2:
        raise AutoError("symplectic completion did not reach full dimension")
    # columns: X_i -> e_i, Y_i -> f_i in the interleaved basis X1,Y1,X2,Y2,...
    cols = []
    for e, w in pairs:
        cols.append(e)
        cols.append(w)
    m = [[f.zero] * a.dim for _ in range(a.dim)]
    for j, col in enumerate(cols):
        for i in range(a.q):
            m[i][j] = col[i]
    m[a.q][a.q] = f.one
    out = LinearMap(a, a, Matrix(f, m))
    if not out.is_automorphism():
        raise AutoError("symplectic completion failed the automorphism check")
    return out
