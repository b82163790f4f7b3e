"""Low-degree rack homology over the integers.

Chain groups are free abelian on cartesian powers of the rack; the two
boundary maps needed for H_2 are

    d2(x, y)    = (y) - (xy)
    d3(x, y, z) = (y, z) + (x, yz) - (x, z) - (xy, xz)

writing xy for act(x, y). Self-distributivity makes d2 . d3 = 0, so the
invariant factors of d3 exceeding 1 are exactly the torsion of
H_2 = ker d2 / im d3: the quotient (C_2/im d3) / H_2 embeds in free C_1,
hence is torsion free. The group H^2(X, k^x) for an algebraically closed
field is Hom(H_2, k^x), one torus factor per free rank and one root-of-unity
group per invariant factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

__all__ = [
    "IntegerMatrix",
    "HomologyResult",
    "CohomologyStructure",
    "boundary_matrices",
    "smith_normal_form",
    "second_homology",
    "second_cohomology_structure",
]

SIZE_GUARD = 10**8


@dataclass
class IntegerMatrix:
    """Sparse exact-integer matrix: entries maps (row, col) to a nonzero
    value; absent keys are zero."""

    rows: int
    cols: int
    entries: dict

    def __post_init__(self):
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ValueError("entry (%d, %d) outside %dx%d" % (r, c, self.rows, self.cols))
            if v == 0:
                raise ValueError("explicit zero stored at (%d, %d)" % (r, c))

    @classmethod
    def from_dense(cls, data):
        rows = len(data)
        cols = len(data[0]) if rows else 0
        entries = {}
        for r, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged rows")
            for c, v in enumerate(row):
                if v:
                    entries[(r, c)] = int(v)
        return cls(rows, cols, entries)

    def to_dense(self):
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    @property
    def nnz(self):
        return len(self.entries)

    def multiply(self, other):
        """Exact product self . other."""
        if self.cols != other.rows:
            raise ValueError("inner dimensions disagree")
        by_row = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        acc = {}
        for (r, k), v in self.entries.items():
            for c, w in by_row.get(k, ()):
                key = (r, c)
                s = acc.get(key, 0) + v * w
                if s:
                    acc[key] = s
                else:
                    acc.pop(key, None)
        return IntegerMatrix(self.rows, other.cols, acc)

    def is_zero(self):
        return not self.entries


def boundary_matrices(rack):
    """The pair (d2, d3) for the rack, with d2 . d3 = 0 checked exactly.

    Pairs (x, y) index columns of d2 and rows of d3 as x*n + y; triples
    (x, y, z) index columns of d3 as x*n^2 + y*n + z.
    """
    n = rack.size
    if n**3 > SIZE_GUARD:
        raise ValueError("rack of size %d exceeds the n^3 <= %d guard" % (n, SIZE_GUARD))
    table = rack.table

    d2 = {}
    for x in range(n):
        row = table[x]
        base = x * n
        for y in range(n):
            t = row[y]
            if t != y:
                d2[(y, base + y)] = 1
                d2[(t, base + y)] = -1

    d3 = {}
    nn = n * n
    for x in range(n):
        row_x = table[x]
        for y in range(n):
            xy = row_x[y]
            row_y = table[y]
            row_xy = table[xy]
            base = x * nn + y * n
            for z in range(n):
                col = base + z
                acc = {}
                for key, delta in (
                    (y * n + z, 1),
                    (x * n + row_y[z], 1),
                    (x * n + z, -1),
                    (xy * n + row_x[z], -1),
                ):
                    s = acc.get(key, 0) + delta
                    if s:
                        acc[key] = s
                    else:
                        acc.pop(key, None)
                for key, v in acc.items():
                    d3[(key, col)] = v

    m2 = IntegerMatrix(n, nn, d2)
    m3 = IntegerMatrix(nn, n * nn, d3)
    if not m2.multiply(m3).is_zero():
        raise AssertionError("d2 . d3 is nonzero; the table is not a rack")
    return m2, m3


def _dense_smith(a):
    """Invariant factors of a small dense integer matrix, destructively.

    Textbook elimination: bring the least-absolute-value entry to the corner,
    clear its row and column by Euclidean steps, enforce that the corner
    divides the rest of the block, recurse on the submatrix.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    factors = []
    t = 0
    while t < rows and t < cols:
        pr = pc = -1
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = a[i][j]
                if v and (best is None or abs(v) < best):
                    best = abs(v)
                    pr, pc = i, j
        if best is None:
            break
        a[t], a[pr] = a[pr], a[t]
        for row in a:
            row[t], row[pc] = row[pc], row[t]
        while True:
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    for j in range(t, cols):
                        a[i][j] -= q * a[t][j]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        break
            else:
                for j in range(t + 1, cols):
                    if a[t][j]:
                        q = a[t][j] // a[t][t]
                        for i in range(t, rows):
                            a[i][j] -= q * a[i][t]
                        if a[t][j]:
                            for row in a:
                                row[t], row[j] = row[j], row[t]
                            break
                else:
                    offender = None
                    pivot = a[t][t]
                    for i in range(t + 1, rows):
                        for j in range(t + 1, cols):
                            if a[i][j] % pivot:
                                offender = i
                                break
                        if offender is not None:
                            break
                    if offender is None:
                        break
                    for j in range(t, cols):
                        a[t][j] += a[offender][j]
                continue
            continue
        factors.append(abs(a[t][t]))
        t += 1
    return factors


def smith_normal_form(matrix):
    """Invariant factors and rank of an integer matrix, exactly.

    Two phases: sparse elimination on unit entries chosen by least fill-in
    (a unit is always a least-absolute-value pivot, and clearing its column
    makes the row clear by column operations that touch nothing else), then
    textbook reduction of the small residual core. The divisibility chain
    d1 | d2 | ... is normalized pairwise before returning.
    """
    if isinstance(matrix, IntegerMatrix):
        entries = matrix.entries
    else:
        entries = IntegerMatrix.from_dense(matrix).entries
    row_data = {}
    col_rows = {}
    for (r, c), v in entries.items():
        row_data.setdefault(r, {})[c] = v
        col_rows.setdefault(c, set()).add(r)

    units = 0
    while True:
        best = None
        for r, row in row_data.items():
            row_cost = len(row) - 1
            for c, v in row.items():
                if v == 1 or v == -1:
                    cost = row_cost * (len(col_rows[c]) - 1)
                    if best is None or cost < best[0]:
                        best = (cost, r, c, v)
                        if cost == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        _, r, c, v = best
        pivot_row = row_data.pop(r)
        for cc in pivot_row:
            col_rows[cc].discard(r)
        for s in list(col_rows.get(c, ())):
            row_s = row_data[s]
            f = row_s[c] * v
            for cc, vv in pivot_row.items():
                nv = row_s.get(cc, 0) - f * vv
                if nv:
                    row_s[cc] = nv
                    col_rows.setdefault(cc, set()).add(s)
                else:
                    if cc in row_s:
                        del row_s[cc]
                        col_rows[cc].discard(s)
            if not row_s:
                del row_data[s]
        col_rows.pop(c, None)
        units += 1

    factors = [1] * units
    if row_data:
        live_rows = sorted(row_data)
        live_cols = sorted({c for row in row_data.values() for c in row})
        col_pos = {c: j for j, c in enumerate(live_cols)}
        core = [[0] * len(live_cols) for _ in live_rows]
        for i, r in enumerate(live_rows):
            for c, v in row_data[r].items():
                core[i][col_pos[c]] = v
        factors.extend(_dense_smith(core))

    factors = [f for f in factors if f]
    # diag(a, b) and diag(gcd, lcm) are equivalent, so one pairwise pass
    # settles the divisibility chain
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            if factors[j] % factors[i]:
                g = gcd(factors[i], factors[j])
                factors[i], factors[j] = g, factors[i] * factors[j] // g
    return tuple(factors), len(factors)


@dataclass(frozen=True)
class HomologyResult:
    """H_2 of a rack: free rank plus the torsion invariant factors, each
    at least 2, in a divisibility chain."""

    free_rank: int
    torsion: tuple

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for i, d in enumerate(self.torsion):
            if d < 2:
                raise ValueError("torsion factor %d below 2" % d)
            if i and self.torsion[i] % self.torsion[i - 1]:
                raise ValueError("torsion chain broken at position %d" % i)


def second_homology(rack):
    """H_2(X, Z) as free rank and torsion chain."""
    d2, d3 = boundary_matrices(rack)
    n = rack.size
    _, rank2 = smith_normal_form(d2)
    factors3, rank3 = smith_normal_form(d3)
    free_rank = n * n - rank2 - rank3
    torsion = tuple(d for d in factors3 if d > 1)
    return HomologyResult(free_rank=free_rank, torsion=torsion)


@dataclass(frozen=True)
class CohomologyStructure:
    """H^2(X, k^x) for algebraically closed k: torus factors and root-of-
    unity orders, with the conventional rendering."""

    free_rank: int
    torsion: tuple

    @property
    def pretty(self):
        parts = ["k^×"] * self.free_rank + ["G_%d" % d for d in self.torsion]
        return " × ".join(parts) if parts else "1"

    def to_json_dict(self):
        return {
            "free_rank": self.free_rank,
            "torsion": list(self.torsion),
            "pretty": self.pretty,
        }


def second_cohomology_structure(rack):
    """Structure of H^2(X, k^x) through Hom(H_2(X, Z), k^x)."""
    h = second_homology(rack)
    return CohomologyStructure(free_rank=h.free_rank, torsion=h.torsion)
