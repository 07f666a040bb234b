"""Exact calculus of finitely generated abelian groups.

Groups are kept in invariant-factor normal form (a free rank plus a
divisibility chain d1 | d2 | ...), homomorphisms are integer matrices in
the chosen generating sets, and kernels, cokernels, element orders and
isomorphism all reduce to Smith normal form over the integers. Every step
uses Python ints, so the arithmetic is exact at any magnitude.

Conventions used throughout:

* a group with free rank r and torsion (d1, ..., dk) has r + k generators,
  free generators first, torsion generators after, in chain order;
* elements are integer coefficient vectors over those generators;
* a homomorphism matrix has one column per source generator and one row
  per target generator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

# ---------------------------------------------------------------------------
# integer matrices


@dataclass(frozen=True)
class IntMatrix:
    """An immutable rows x cols integer matrix, stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match dimensions")
        if any(not isinstance(e, int) for e in self.entries):
            raise ValueError("matrix entries must be Python ints")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        r = len(rows)
        if r == 0:
            return cls(0, cols or 0, ())
        c = len(rows[0])
        flat: list[int] = []
        for row in rows:
            if len(row) != c:
                raise ValueError("ragged rows")
            flat.extend(int(x) for x in row)
        return cls(r, c, tuple(flat))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def column(cls, vec: Sequence[int]) -> "IntMatrix":
        return cls(len(vec), 1, tuple(int(x) for x in vec))

    def at(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                out.append(sum(ri[k] * other.at(k, j) for k in range(self.cols)))
        return IntMatrix(self.rows, other.cols, tuple(out))

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        if len(vec) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(sum(self.row(i)[k] * vec[k] for k in range(self.cols)) for i in range(self.rows))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(self.at(i, j) for j in range(self.cols) for i in range(self.rows)))

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def det(self) -> int:
        """Exact determinant via fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = self.to_rows()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]


def hstack(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a.rows != b.rows:
        raise ValueError("row count mismatch in hstack")
    rows = [list(a.row(i)) + list(b.row(i)) for i in range(a.rows)]
    return IntMatrix.from_rows(rows, cols=a.cols + b.cols)


def identity_minus(a: IntMatrix) -> IntMatrix:
    if a.rows != a.cols:
        raise ValueError("identity_minus needs a square matrix")
    n = a.rows
    return IntMatrix(n, n, tuple((1 if i == j else 0) - a.at(i, j) for i in range(n) for j in range(n)))


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SnfDecomposition:
    """u @ a @ v = s with s diagonal, u and v unimodular.

    ``diag`` lists the diagonal of s; nonzero entries are positive, each
    divides the next, and zeros come last.
    """

    s: IntMatrix
    u: IntMatrix
    v: IntMatrix
    diag: tuple[int, ...]


class _SnfExt(NamedTuple):
    s: IntMatrix
    u: IntMatrix
    v: IntMatrix
    u_inv: IntMatrix
    v_inv: IntMatrix


def _snf_ext(a: IntMatrix) -> _SnfExt:
    """Smith normal form with the inverse transforms tracked alongside.

    Pivot rule: the nonzero entry of least absolute value, ties broken by
    lowest (row, col). This makes the output deterministic.
    """
    r, c = a.rows, a.cols
    m = a.to_rows()
    u = IntMatrix.identity(r).to_rows()
    ui = IntMatrix.identity(r).to_rows()
    v = IntMatrix.identity(c).to_rows()
    vi = IntMatrix.identity(c).to_rows()

    def row_add(i: int, j: int, q: int) -> None:
        # row_i += q * row_j; inverse transform adjusts column j of u_inv
        m[i] = [x + q * y for x, y in zip(m[i], m[j])]
        u[i] = [x + q * y for x, y in zip(u[i], u[j])]
        for k in range(r):
            ui[k][j] -= q * ui[k][i]

    def swap_rows(i: int, j: int) -> None:
        if i == j:
            return
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]
        for k in range(r):
            ui[k][i], ui[k][j] = ui[k][j], ui[k][i]

    def negate_row(i: int) -> None:
        m[i] = [-x for x in m[i]]
        u[i] = [-x for x in u[i]]
        for k in range(r):
            ui[k][i] = -ui[k][i]

    def col_add(j: int, i: int, q: int) -> None:
        # col_j += q * col_i; inverse transform adjusts row i of v_inv
        for k in range(r):
            m[k][j] += q * m[k][i]
        for k in range(c):
            v[k][j] += q * v[k][i]
        vi[i] = [x - q * y for x, y in zip(vi[i], vi[j])]

    def swap_cols(i: int, j: int) -> None:
        if i == j:
            return
        for k in range(r):
            m[k][i], m[k][j] = m[k][j], m[k][i]
        for k in range(c):
            v[k][i], v[k][j] = v[k][j], v[k][i]
        vi[i], vi[j] = vi[j], vi[i]

    def find_pivot(t: int) -> tuple[int, int] | None:
        best: tuple[int, int] | None = None
        best_abs = 0
        for i in range(t, r):
            for j in range(t, c):
                e = m[i][j]
                if e != 0 and (best is None or abs(e) < best_abs):
                    best = (i, j)
                    best_abs = abs(e)
        return best

    t = 0
    limit = min(r, c)
    while t < limit:
        pivot = find_pivot(t)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])

        # clear column t; leftover remainders force a re-pivot
        col_clean = True
        for i in range(t + 1, r):
            if m[i][t] != 0:
                q = m[i][t] // m[t][t]
                if q:
                    row_add(i, t, -q)
                if m[i][t] != 0:
                    col_clean = False
        if not col_clean:
            continue

        row_clean = True
        for j in range(t + 1, c):
            if m[t][j] != 0:
                q = m[t][j] // m[t][t]
                if q:
                    col_add(j, t, -q)
                if m[t][j] != 0:
                    row_clean = False
        if not row_clean:
            continue

        # enforce the divisibility chain: the pivot must divide the rest
        p = m[t][t]
        offender = None
        for i in range(t + 1, r):
            for j in range(t + 1, c):
                if m[i][j] % p != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_add(t, offender, 1)
            continue

        if m[t][t] < 0:
            negate_row(t)
        t += 1

    s = IntMatrix.from_rows(m, cols=c)
    return _SnfExt(
        s,
        IntMatrix.from_rows(u, cols=r),
        IntMatrix.from_rows(v, cols=c),
        IntMatrix.from_rows(ui, cols=r),
        IntMatrix.from_rows(vi, cols=c),
    )


def smith_normal_form(a: IntMatrix) -> SnfDecomposition:
    """Diagonalize ``a`` by unimodular row and column operations.

    Works on any rectangular matrix, including empty ones. The result is
    deterministic for a given input.
    """
    ext = _snf_ext(a)
    diag = tuple(ext.s.at(i, i) for i in range(min(a.rows, a.cols)))
    return SnfDecomposition(ext.s, ext.u, ext.v, diag)


# ---------------------------------------------------------------------------
# groups and homomorphisms


def _default_names(count: int) -> tuple[str, ...]:
    return tuple(f"g{i}" for i in range(count))


@dataclass(frozen=True)
class FgAbGroup:
    """A finitely generated abelian group in invariant-factor normal form.

    ``torsion`` is the chain (d1, ..., dk) with each di >= 2 and d1 | d2 |
    ...; the group is Z^free_rank + Z/d1 + ... + Z/dk. Generator names are
    unique within the group, free generators named first.
    """

    free_rank: int
    torsion: tuple[int, ...] = ()
    gen_names: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        tors = tuple(int(d) for d in self.torsion)
        object.__setattr__(self, "torsion", tors)
        for d in tors:
            if d < 2:
                raise ValueError("torsion coefficients must be >= 2")
        for a, b in zip(tors, tors[1:]):
            if b % a != 0:
                raise ValueError(f"torsion {tors} is not a divisibility chain")
        names = self.gen_names
        if names is None:
            names = _default_names(self.gen_count)
        else:
            names = tuple(names)
        if len(names) != self.free_rank + len(tors):
            raise ValueError("generator name count must match summand count")
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        object.__setattr__(self, "gen_names", names)

    @classmethod
    def trivial(cls) -> "FgAbGroup":
        return cls(0, (), ())

    @classmethod
    def free(cls, rank: int, names: Sequence[str] | None = None) -> "FgAbGroup":
        return cls(rank, (), names)

    @classmethod
    def cyclic(cls, d: int, name: str = "t") -> "FgAbGroup":
        if d == 0:
            return cls(1, (), (name,))
        if abs(d) == 1:
            return cls.trivial()
        return cls(0, (abs(d),), (name,))

    @property
    def gen_count(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def is_trivial(self) -> bool:
        return self.gen_count == 0

    def order(self) -> int | float:
        if self.free_rank > 0:
            return math.inf
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def relation_matrix(self) -> IntMatrix:
        """Columns spanning the relation lattice: d_j e_j per torsion gen."""
        n = self.gen_count
        cols = len(self.torsion)
        entries = [0] * (n * cols)
        for j, d in enumerate(self.torsion):
            entries[(self.free_rank + j) * cols + j] = d
        return IntMatrix(n, cols, tuple(entries))

    def reduce(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Canonical representative: torsion coordinates mod their order."""
        if len(vec) != self.gen_count:
            raise ValueError("vector length does not match generator count")
        out = [int(x) for x in vec]
        for j, d in enumerate(self.torsion):
            out[self.free_rank + j] %= d
        return tuple(out)

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.gen_count

    def renamed(self, names: Sequence[str]) -> "FgAbGroup":
        return FgAbGroup(self.free_rank, self.torsion, tuple(names))

    def describe(self) -> str:
        """Normal-form notation such as ``Z^2 + Z/4 + Z/12`` (``0`` if trivial)."""
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    def __str__(self) -> str:
        return self.describe()


@dataclass(frozen=True)
class GroupHom:
    """A homomorphism between FgAbGroups as an integer matrix.

    Columns are indexed by source generators, rows by target generators.
    Well-definedness on torsion is checked at construction: for a source
    generator of order d, d times its image column must vanish in the
    target. Ill-defined data is rejected, never silently normalized.
    """

    source: FgAbGroup
    target: FgAbGroup
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.rows != self.target.gen_count or self.matrix.cols != self.source.gen_count:
            raise ValueError("matrix dimensions do not match generator counts")
        for j, d in enumerate(self.source.torsion):
            col = self.matrix.col(self.source.free_rank + j)
            image = self.target.reduce(tuple(d * x for x in col))
            if any(image):
                raise ValueError(
                    f"not well-defined on torsion: generator of order {d} "
                    f"maps to an element not killed by {d}"
                )

    @classmethod
    def identity(cls, g: FgAbGroup) -> "GroupHom":
        return cls(g, g, IntMatrix.identity(g.gen_count))

    @classmethod
    def zero(cls, source: FgAbGroup, target: FgAbGroup) -> "GroupHom":
        return cls(source, target, IntMatrix.zeros(target.gen_count, source.gen_count))

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        return self.target.reduce(self.matrix.apply(vec))

    def compose(self, other: "GroupHom") -> "GroupHom":
        """self o other (apply ``other`` first)."""
        if other.target != self.source:
            raise ValueError("composition mismatch")
        return GroupHom(other.source, self.target, self.matrix @ other.matrix)

    def power(self, k: int) -> "GroupHom":
        if self.source != self.target:
            raise ValueError("powers need a self-map")
        out = GroupHom.identity(self.source)
        for _ in range(k):
            out = self.compose(out)
        return out

    def is_zero(self) -> bool:
        return all(not any(self.apply(_basis_vec(self.source.gen_count, j))) for j in range(self.source.gen_count))


def _basis_vec(n: int, j: int) -> tuple[int, ...]:
    return tuple(1 if i == j else 0 for i in range(n))


# ---------------------------------------------------------------------------
# naming helpers

QUOTIENT_TAG = "‾"  # overline, marks images under a quotient map


def _dominant_names(
    coeff_vectors: Sequence[Sequence[int]],
    base_names: Sequence[str],
    tag: str,
) -> tuple[str, ...]:
    """Name derived generators after the dominant base generator.

    Each derived generator is a combination of base generators; it borrows
    the name of the coefficient of largest absolute value (first on ties),
    suffixed with ``tag``. Duplicates get a numeric suffix so names stay
    unique within the group.
    """
    names: list[str] = []
    seen: dict[str, int] = {}
    for idx, coeffs in enumerate(coeff_vectors):
        best = None
        best_abs = 0
        for j, c in enumerate(coeffs):
            if c != 0 and abs(c) > best_abs:
                best = j
                best_abs = abs(c)
        base = base_names[best] + tag if best is not None else f"q{idx}{tag}"
        count = seen.get(base, 0)
        seen[base] = count + 1
        names.append(base if count == 0 else f"{base}{count + 1}")
    return tuple(names)


# ---------------------------------------------------------------------------
# kernels, cokernels, orders


class _CokernelData(NamedTuple):
    group: FgAbGroup
    projection: GroupHom
    section: IntMatrix  # target gens x quotient gens; lifts quotient generators


def _normal_form_of_quotient(
    ambient_count: int,
    relation_cols: IntMatrix,
    base_names: Sequence[str],
    tag: str,
) -> tuple[FgAbGroup, IntMatrix, IntMatrix]:
    """Normal form of Z^ambient_count / column span of ``relation_cols``.

    Returns (group, projection matrix, section matrix). The projection has
    one row per surviving generator; the section is its right inverse up to
    the dropped unit summands.
    """
    ext = _snf_ext(relation_cols)
    diag = [ext.s.at(i, i) for i in range(min(relation_cols.rows, relation_cols.cols))]

    free_idx = [i for i in range(ambient_count) if i >= len(diag) or diag[i] == 0]
    tors_idx = [i for i in range(len(diag)) if diag[i] >= 2]
    kept = free_idx + tors_idx

    torsion = tuple(diag[i] for i in tors_idx)
    proj_rows = [list(ext.u.row(i)) for i in kept]
    proj = IntMatrix.from_rows(proj_rows, cols=ambient_count)
    section_cols = [[ext.u_inv.at(i, j) for j in kept] for i in range(ambient_count)]
    section = IntMatrix.from_rows(section_cols, cols=len(kept))

    names = _dominant_names(proj_rows, base_names, tag)
    group = FgAbGroup(len(free_idx), torsion, names)
    return group, proj, section


def _cokernel_ext(h: GroupHom) -> _CokernelData:
    relations = hstack(h.matrix, h.target.relation_matrix())
    group, proj, section = _normal_form_of_quotient(
        h.target.gen_count, relations, h.target.gen_names, QUOTIENT_TAG
    )
    projection = GroupHom(h.target, group, proj)
    return _CokernelData(group, projection, section)


def cokernel(h: GroupHom) -> tuple[FgAbGroup, GroupHom]:
    """The cokernel target/im(h) in normal form, with the projection map.

    Generator names derive from target names with a quotient tag, so
    tracked generator symbols survive quotienting.
    """
    data = _cokernel_ext(h)
    return data.group, data.projection


def integer_kernel_basis(a: IntMatrix) -> list[tuple[int, ...]]:
    """A lattice basis of {x : a x = 0} over the integers."""
    ext = _snf_ext(a)
    diag = [ext.s.at(i, i) for i in range(min(a.rows, a.cols))]
    basis = []
    for j in range(a.cols):
        if j >= len(diag) or diag[j] == 0:
            basis.append(ext.v.col(j))
    return basis


class _KernelData(NamedTuple):
    group: FgAbGroup
    inclusion: GroupHom


def _kernel_ext(h: GroupHom) -> _KernelData:
    n = h.source.gen_count
    # preimage lattice of the target relation lattice
    a = hstack(h.matrix, h.target.relation_matrix())
    generators = [vec[:n] for vec in integer_kernel_basis(a)]
    b = IntMatrix.from_rows([[g[i] for g in generators] for i in range(n)], cols=len(generators))

    # relations among those generators, modulo the source relation lattice
    rel = hstack(b, h.source.relation_matrix())
    rel_gens = [vec[: b.cols] for vec in integer_kernel_basis(rel)]
    rel_mat = IntMatrix.from_rows([[g[i] for g in rel_gens] for i in range(b.cols)], cols=len(rel_gens))

    ext = _snf_ext(rel_mat)
    diag = [ext.s.at(i, i) for i in range(min(rel_mat.rows, rel_mat.cols))]
    free_idx = [i for i in range(b.cols) if i >= len(diag) or diag[i] == 0]
    tors_idx = [i for i in range(len(diag)) if diag[i] >= 2]
    kept = free_idx + tors_idx

    inc_full = b @ ext.u_inv
    inc_cols = [[inc_full.at(i, j) for j in kept] for i in range(n)]
    inclusion_matrix = IntMatrix.from_rows(inc_cols, cols=len(kept))

    torsion = tuple(diag[i] for i in tors_idx)
    col_vectors = [inclusion_matrix.col(j) for j in range(len(kept))]
    names = _dominant_names(col_vectors, h.source.gen_names, "")
    group = FgAbGroup(len(free_idx), torsion, names)
    inclusion = GroupHom(group, h.source, inclusion_matrix)
    return _KernelData(group, inclusion)


def kernel(h: GroupHom) -> tuple[FgAbGroup, GroupHom]:
    """The kernel of ``h`` in normal form, with its inclusion into the source."""
    data = _kernel_ext(h)
    return data.group, data.inclusion


def element_order(g: FgAbGroup, elem: Sequence[int]) -> int | float:
    """Least k >= 1 with k * elem = 0 in g, or math.inf if none."""
    if len(elem) != g.gen_count:
        raise ValueError("element length does not match generator count")
    if any(elem[: g.free_rank]):
        return math.inf
    k = 1
    for j, d in enumerate(g.torsion):
        c = elem[g.free_rank + j] % d
        if c:
            k = math.lcm(k, d // math.gcd(d, c))
    return k


def is_isomorphic(g1: FgAbGroup, g2: FgAbGroup) -> bool:
    """Normal forms are unique, so this is a direct comparison."""
    return g1.free_rank == g2.free_rank and g1.torsion == g2.torsion


def solve(h: GroupHom, target_vec: Sequence[int]) -> tuple[int, ...] | None:
    """Some x with h(x) = target_vec in the target group, or None.

    Solutions are sought over the source generators as an integer vector;
    equality in the target is modulo its relation lattice.
    """
    if len(target_vec) != h.target.gen_count:
        raise ValueError("vector length does not match target generator count")
    a = hstack(h.matrix, h.target.relation_matrix())
    ext = _snf_ext(a)
    diag = [ext.s.at(i, i) for i in range(min(a.rows, a.cols))]
    y = ext.u.apply(target_vec)
    w = [0] * a.cols
    for i in range(a.rows):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if y[i] != 0:
                return None
        else:
            if y[i] % d != 0:
                return None
            w[i] = y[i] // d
    x_full = ext.v.apply(w)
    return tuple(x_full[: h.source.gen_count])


def generates(g: FgAbGroup, vec: Sequence[int]) -> bool:
    """Does the cyclic subgroup generated by ``vec`` equal all of g?"""
    h = GroupHom(FgAbGroup.free(1, ("c",)), g, IntMatrix.column(g.reduce(vec)))
    quotient, _ = cokernel(h)
    return quotient.is_trivial


# ---------------------------------------------------------------------------
# JSON forms


def matrix_to_json(m: IntMatrix) -> list[list[int]]:
    return m.to_rows()


def matrix_from_json(data, rows: int | None = None, cols: int | None = None) -> IntMatrix:
    if not isinstance(data, list) or any(not isinstance(r, list) for r in data):
        raise ValueError("matrix JSON must be a list of rows")
    if not data:
        return IntMatrix(rows or 0, cols or 0, ())
    return IntMatrix.from_rows([[int(x) for x in row] for row in data])


def group_to_json(g: FgAbGroup) -> dict:
    return {"free_rank": g.free_rank, "torsion": list(g.torsion), "gens": list(g.gen_names)}


def group_from_json(data: dict) -> FgAbGroup:
    if not isinstance(data, dict) or "free_rank" not in data:
        raise ValueError("group JSON must carry free_rank, torsion, gens")
    names = data.get("gens")
    return FgAbGroup(int(data["free_rank"]), tuple(data.get("torsion", ())), tuple(names) if names is not None else None)


def hom_to_json(h: GroupHom) -> dict:
    return {
        "source": group_to_json(h.source),
        "target": group_to_json(h.target),
        "matrix": matrix_to_json(h.matrix),
    }


def hom_from_json(data: dict) -> GroupHom:
    source = group_from_json(data["source"])
    target = group_from_json(data["target"])
    matrix = matrix_from_json(data["matrix"], rows=target.gen_count, cols=source.gen_count)
    if matrix.rows == 0 and matrix.cols == 0:
        matrix = IntMatrix.zeros(target.gen_count, source.gen_count)
    return GroupHom(source, target, matrix)
