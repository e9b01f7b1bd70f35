"""Named algebra builders and the dimension <= 6 classifier.

The classifier fingerprint is (dim, abelian factor dim, core type, and for
(2,4) cores the discriminant sign of the binary quadratic Pfaffian pencil).
The Pfaffian of the pencil transforms under a change of presentation by a
nonzero determinant factor and a GL2 substitution in (z1, z2), both of which
preserve the sign of the discriminant of a binary quadratic form, so the
fingerprint is presentation-invariant.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .algebra import (AlgebraError, TwoStepAlgebra, abelian, abelian_factor_split,
                      direct_sum, j_map)
from .linalg import Matrix, pfaffian, rank_kernel
from .scalars import QQ, MultiPoly


class CatalogError(ValueError):
    pass


def heis(n: int) -> TwoStepAlgebra:
    """heis_{2n+1}: basis X1, Y1, ..., Xn, Yn, Z with [Xi, Yi] = Z."""
    if n < 1:
        raise CatalogError("heis(n) needs n >= 1")
    brackets = {(2 * i, 2 * i + 1): (Fraction(1),) for i in range(n)}
    return TwoStepAlgebra(QQ, 2 * n, 1, brackets, label=f"heis{2 * n + 1}")


def quat(n: int) -> TwoStepAlgebra:
    """(4n+3)-dim quaternionic Heisenberg: blocks Xi, Yi, Vi, Wi over Z1..Z3."""
    if n < 1:
        raise CatalogError("quat(n) needs n >= 1")
    brackets = {}
    for i in range(n):
        b = 4 * i
        brackets[(b, b + 1)] = (Fraction(1), Fraction(0), Fraction(0))     # [X,Y]=Z1
        brackets[(b, b + 2)] = (Fraction(0), Fraction(1), Fraction(0))     # [X,V]=Z2
        brackets[(b, b + 3)] = (Fraction(0), Fraction(0), Fraction(1))     # [X,W]=Z3
        brackets[(b + 1, b + 2)] = (Fraction(0), Fraction(0), Fraction(1))  # [Y,V]=Z3
        brackets[(b + 1, b + 3)] = (Fraction(0), Fraction(-1), Fraction(0))  # [Y,W]=-Z2
        brackets[(b + 2, b + 3)] = (Fraction(1), Fraction(0), Fraction(0))  # [V,W]=Z1
    return TwoStepAlgebra(QQ, 4 * n, 3, brackets, label=f"quat{4 * n + 3}")


_J1 = [[0, -1], [1, 0]]
_J2 = [[1, 0], [0, -1]]
_J3 = [[0, 1], [1, 0]]
_I2 = [[1, 0], [0, 1]]
_Z2 = [[0, 0], [0, 0]]


def _blocks(layout) -> list[list[Fraction]]:
    out = [[Fraction(0)] * 8 for _ in range(8)]
    for bi in range(4):
        for bj in range(4):
            blk = layout[bi][bj]
            for i in range(2):
                for j in range(2):
                    out[2 * bi + i][2 * bj + j] = Fraction(blk[i][j])
    return out


def _neg(b):
    return [[-x for x in row] for row in b]


# the seven j(Z_k) of the 15-dim octonionic Heisenberg algebra, as 4x4 grids
# of 2x2 blocks; left-multiplication convention
_OCT_LAYOUTS = [
    [[_J1, _Z2, _Z2, _Z2], [_Z2, _J1, _Z2, _Z2], [_Z2, _Z2, _J1, _Z2], [_Z2, _Z2, _Z2, _neg(_J1)]],
    [[_Z2, _neg(_J2), _Z2, _Z2], [_J2, _Z2, _Z2, _Z2], [_Z2, _Z2, _Z2, _neg(_I2)], [_Z2, _Z2, _I2, _Z2]],
    [[_Z2, _neg(_J3), _Z2, _Z2], [_J3, _Z2, _Z2, _Z2], [_Z2, _Z2, _Z2, _J1], [_Z2, _Z2, _J1, _Z2]],
    [[_Z2, _Z2, _neg(_J2), _Z2], [_Z2, _Z2, _Z2, _I2], [_J2, _Z2, _Z2, _Z2], [_Z2, _neg(_I2), _Z2, _Z2]],
    [[_Z2, _Z2, _neg(_J3), _Z2], [_Z2, _Z2, _Z2, _neg(_J1)], [_J3, _Z2, _Z2, _Z2], [_Z2, _neg(_J1), _Z2, _Z2]],
    [[_Z2, _Z2, _Z2, _neg(_I2)], [_Z2, _Z2, _neg(_J2), _Z2], [_Z2, _J2, _Z2, _Z2], [_I2, _Z2, _Z2, _Z2]],
    [[_Z2, _Z2, _Z2, _J1], [_Z2, _Z2, _neg(_J3), _Z2], [_Z2, _J3, _Z2, _Z2], [_J1, _Z2, _Z2, _Z2]],
]


def oct() -> TwoStepAlgebra:
    """15-dim octonionic Heisenberg, brackets read off the j-matrices via
    c^k_ij = (J^k)_ji (single source of truth)."""
    mats = [_blocks(layout) for layout in _OCT_LAYOUTS]
    brackets = {}
    for i in range(8):
        for j in range(i + 1, 8):
            vec = tuple(mats[k][j][i] for k in range(7))
            if any(c != 0 for c in vec):
                brackets[(i, j)] = vec
    return TwoStepAlgebra(QQ, 8, 7, brackets, label="oct")


def n5() -> TwoStepAlgebra:
    """[X1,X2] = Z1, [X1,X3] = Z2."""
    return TwoStepAlgebra(QQ, 3, 2, {
        (0, 1): (Fraction(1), Fraction(0)),
        (0, 2): (Fraction(0), Fraction(1)),
    }, label="N5")


def n6() -> TwoStepAlgebra:
    """heis3 over the dual numbers: [X1,X2] = Z1, [X1,X3] = Z2, [X2,X4] = Z2."""
    return TwoStepAlgebra(QQ, 4, 2, {
        (0, 1): (Fraction(1), Fraction(0)),
        (0, 2): (Fraction(0), Fraction(1)),
        (1, 3): (Fraction(0), Fraction(1)),
    }, label="N6")


def n6prime() -> TwoStepAlgebra:
    """[X1,X2] = Z3, [X2,X3] = Z1, [X3,X1] = Z2."""
    return TwoStepAlgebra(QQ, 3, 3, {
        (0, 1): (Fraction(0), Fraction(0), Fraction(1)),
        (0, 2): (Fraction(0), Fraction(-1), Fraction(0)),
        (1, 2): (Fraction(1), Fraction(0), Fraction(0)),
    }, label="N6prime")


def heis3c() -> TwoStepAlgebra:
    """Realification of heis3(C) over {X, iX, Y, iY, Z, iZ}: the complex
    bracket [X, Y] = Z expanded over real coordinates."""
    return TwoStepAlgebra(QQ, 4, 2, {
        (0, 2): (Fraction(1), Fraction(0)),   # [X, Y] = Z
        (0, 3): (Fraction(0), Fraction(1)),   # [X, iY] = iZ
        (1, 2): (Fraction(0), Fraction(1)),   # [iX, Y] = iZ
        (1, 3): (Fraction(-1), Fraction(0)),  # [iX, iY] = -Z
    }, label="heis3C")


_NAME_RE = re.compile(r"^(?P<base>heis\d+|quat\d+|oct|N5|N6prime|N6|heis3C)"
                      r"(?:\+R(?:\^(?P<k>\d+))?)?$")


def build_catalog(name: str) -> TwoStepAlgebra:
    """Named builders: heis<2n+1>, quat<4n+3>, oct, N5, N6, N6prime, heis3C,
    each optionally wrapped as <base>+R or <base>+R^k."""
    m = _NAME_RE.match(name.strip())
    if not m:
        raise CatalogError(f"unknown catalog name {name!r}")
    base = m.group("base")
    if base.startswith("heis") and base != "heis3C":
        d = int(base[4:])
        if d < 3 or d % 2 == 0:
            raise CatalogError(f"heis dimension must be odd >= 3, got {d}")
        alg = heis((d - 1) // 2)
    elif base.startswith("quat"):
        d = int(base[4:])
        if d < 7 or d % 4 != 3:
            raise CatalogError(f"quat dimension must be 4n+3, got {d}")
        alg = quat((d - 3) // 4)
    elif base == "oct":
        alg = oct()
    elif base == "N5":
        alg = n5()
    elif base == "N6":
        alg = n6()
    elif base == "N6prime":
        alg = n6prime()
    else:
        alg = heis3c()
    if "+R" in name:
        k = int(m.group("k") or 1)
        out = direct_sum(alg, abelian(alg.field, k))
        suffix = "+R" if k == 1 else f"+R^{k}"
        return TwoStepAlgebra(out.field, out.q, out.p, out.brackets,
                              label=(alg.label or base) + suffix)
    return alg


CATALOG_NAMES = [
    "heis3", "heis5", "heis7", "quat7", "quat11", "oct",
    "N5", "N6", "N6prime", "heis3C",
    "heis3+R", "heis3+R^2", "heis3+R^3", "heis5+R", "N5+R",
]


def pfaffian_pencil(a: TwoStepAlgebra) -> MultiPoly:
    """Pf(sum_k z_k J^k) as a homogeneous MultiPoly of degree q/2 in
    formal z1..zp; requires q even and commutator ideal = Z."""
    if a.q % 2 != 0:
        raise CatalogError("Pfaffian pencil needs even q")
    consts = a.rational_constants()
    nv = a.p
    zero = MultiPoly(nv)
    s = [[zero for _ in range(a.q)] for _ in range(a.q)]
    for (i, j), vec in consts.items():
        for k in range(nv):
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

    return pfaffian(Matrix(_PolyField(), s))


@dataclass(frozen=True)
class Fingerprint:
    dim: int
    abelian_k: int
    core_type: tuple[int, int]          # (p', q')
    disc_sign: Optional[int]            # sign of b^2 - 4ac; None unless core (2,4)


def fingerprint(a: TwoStepAlgebra) -> Fingerprint:
    core, k, _ = abelian_factor_split(a)
    disc = None
    if (core.p, core.q) == (2, 4):
        pf = pfaffian_pencil(core)
        aa = pf.terms.get((2, 0), Fraction(0))
        bb = pf.terms.get((1, 1), Fraction(0))
        cc = pf.terms.get((0, 2), Fraction(0))
        d = bb * bb - 4 * aa * cc
        disc = (d > 0) - (d < 0)
    return Fingerprint(a.dim, k, (core.p, core.q), disc)


_TABLE1 = {
    (3, 0, (1, 2), None): "heis3(R)",
    (4, 1, (1, 2), None): "heis3(R)+R",
    (5, 2, (1, 2), None): "heis3(R)+R^2",
    (5, 0, (1, 4), None): "heis5(R)",
    (5, 0, (2, 3), None): "N5",
    (6, 3, (1, 2), None): "heis3(R)+R^3",
    (6, 1, (1, 4), None): "heis5(R)+R",
    (6, 1, (2, 3), None): "N5+R",
    (6, 0, (2, 4), 1): "heis3(R)+heis3(R)",
    (6, 0, (2, 4), -1): "heis3(C)",
    (6, 0, (2, 4), 0): "N6",
    (6, 0, (3, 3), None): "N6'",
}


def classify_dim_le6(a: TwoStepAlgebra) -> str:
    """Name the Table-1 isomorphism class of a dim <= 6 algebra."""
    if a.dim > 6:
        raise CatalogError(f"classifier only covers dim <= 6, got dim {a.dim}")
    fp = fingerprint(a)
    if fp.core_type[1] == 0:
        return "Abelian"
    return _TABLE1.get((fp.dim, fp.abelian_k, fp.core_type, fp.disc_sign), "Unknown")


def transform_presentation(a: TwoStepAlgebra, rng: random.Random,
                           bound: int = 3) -> TwoStepAlgebra:
    """Re-present a in a random basis respecting the V/Z filtration: new V
    basis A (invertible, plus arbitrary Z components B), new Z basis C
    (invertible).  Produces an isomorphic algebra with scrambled constants."""
    f = a.field

    def rand_invertible(n):
        while True:
            m = Matrix(f, [[f.from_int(rng.randint(-bound, bound)) for _ in range(n)]
                           for _ in range(n)])
            r, _ = rank_kernel(m)
            if r == n:
                return m

    amat = rand_invertible(a.q)
    cmat = rand_invertible(a.p)
    from .linalg import inverse
    cinv = inverse(cmat)
    brackets = {}
    for i in range(a.q):
        for j in range(i + 1, a.q):
            # [new_i, new_j] in old z-coordinates (B components are central)
            vec = [f.zero] * a.p
            for (s, t), cv in a.brackets.items():
                coef = (amat.data[s][i] * amat.data[t][j]
                        - amat.data[t][i] * amat.data[s][j])
                if f.is_zero(coef):
                    continue
                for k in range(a.p):
                    vec[k] = vec[k] + coef * cv[k]
            new_vec = cinv.apply(vec)
            if any(not f.is_zero(c) for c in new_vec):
                brackets[(i, j)] = tuple(new_vec)
    return TwoStepAlgebra(f, a.q, a.p, brackets, label=a.label)
