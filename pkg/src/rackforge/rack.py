"""Finite racks as explicit operation tables.

A rack is a finite set with a binary operation, written act(x, y) for
x acting on y, such that every left translation is a bijection and the
self-distributive law x(yz) = (xy)(xz) holds. The main source here is
conjugation: a set of permutations closed under mutual conjugation forms
a rack with x acting on y as x y x^-1, and the alternating class of a
p-cycle is the central example.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional

from .constructions import class_elements, natural_class
from .groups import build_bsgs, conjugacy_orbit_contains
from .perm import Permutation, conjugate, format_cycles

__all__ = [
    "FiniteRack",
    "validate_rack",
    "conjugation_rack",
    "class_rack",
    "subrack_closure",
    "maximal_abelian_subrack_through",
    "TypeDResult",
    "TypeDWitness",
    "type_d_pair",
    "power_map_candidates",
    "rack_isomorphic",
]


class FiniteRack:
    """Rack on points 0..n-1 with table[x][y] = act(x, y).

    Optional labels name the points for reports. Conjugation racks also
    carry the underlying permutations in `elements`; that field is runtime
    convenience only and does not enter equality or serialization.
    """

    __slots__ = ("table", "labels", "elements", "_inv_rows")

    def __init__(self, table, labels=None, elements=None, check=True):
        tab = tuple(tuple(row) for row in table)
        if check:
            validate_rack(tab)
        if labels is not None:
            labels = tuple(str(s) for s in labels)
            if len(labels) != len(tab):
                raise ValueError("label count does not match rack size")
        if elements is not None:
            elements = tuple(elements)
            if len(elements) != len(tab):
                raise ValueError("element count does not match rack size")
        self.table = tab
        self.labels = labels
        self.elements = elements
        self._inv_rows = None

    @property
    def size(self):
        return len(self.table)

    def act(self, x, y):
        return self.table[x][y]

    def act_inverse(self, x, y):
        """The unique z with act(x, z) = y."""
        if self._inv_rows is None:
            inv = []
            for row in self.table:
                r = [0] * len(row)
                for i, j in enumerate(row):
                    r[j] = i
                inv.append(tuple(r))
            self._inv_rows = tuple(inv)
        return self._inv_rows[x][y]

    def is_quandle(self):
        return all(row[x] == x for x, row in enumerate(self.table))

    def label_of(self, x):
        return self.labels[x] if self.labels is not None else str(x)

    def __eq__(self, other):
        if not isinstance(other, FiniteRack):
            return NotImplemented
        return self.table == other.table and self.labels == other.labels

    def __repr__(self):
        return "FiniteRack(size=%d)" % self.size

    def to_json_dict(self):
        """Portable form with 1-based table entries."""
        out = {
            "size": self.size,
            "table": [[v + 1 for v in row] for row in self.table],
        }
        if self.labels is not None:
            out["labels"] = list(self.labels)
        return out

    @classmethod
    def from_json_dict(cls, data):
        n = data["size"]
        table = data["table"]
        if len(table) != n:
            raise ValueError("table size disagrees with the size field")
        rows = []
        for row in table:
            if len(row) != n or not all(1 <= v <= n for v in row):
                raise ValueError("table entries must be 1..size")
            rows.append(tuple(v - 1 for v in row))
        return cls(rows, labels=data.get("labels"), check=True)


def validate_rack(table):
    """Raise ValueError unless the table is a rack.

    Accepts a FiniteRack or a raw table. Checks that rows are bijections
    and that self-distributivity holds, in the translation form: the row
    of act(x, y) equals row_x . row_y . row_x^-1, verified pairwise as
    act(x, act(y, z)) = act(act(x, y), act(x, z)) for all z at once.
    """
    if isinstance(table, FiniteRack):
        table = table.table
    tab = tuple(tuple(row) for row in table)
    n = len(tab)
    full = set(range(n))
    for x, row in enumerate(tab):
        if len(row) != n:
            raise ValueError("row %d has length %d, expected %d" % (x, len(row), n))
        if set(row) != full:
            raise ValueError("row %d is not a bijection of 0..%d" % (x, n - 1))
    for x in range(n):
        tx = tab[x]
        get = tx.__getitem__
        for y in range(n):
            lhs = tuple(map(get, tab[y]))
            rhs = tuple(map(tab[tx[y]].__getitem__, tx))
            if lhs != rhs:
                for z in range(n):
                    if lhs[z] != rhs[z]:
                        raise ValueError(
                            "self-distributivity fails at (%d, %d, %d)" % (x, y, z)
                        )


def conjugation_rack(perms, labels=None):
    """Rack on a list of distinct permutations with x acting as conjugation.

    The list must be closed under mutual conjugation. Rows are bijections
    and self-distributivity holds automatically, so no table validation is
    run. Default labels are cycle strings.
    """
    elems = [g if isinstance(g, Permutation) else Permutation(g) for g in perms]
    if not elems:
        raise ValueError("a rack needs at least one element")
    degree = elems[0].degree
    if any(g.degree != degree for g in elems):
        raise ValueError("elements must share one degree")
    index = {g.images: i for i, g in enumerate(elems)}
    if len(index) != len(elems):
        raise ValueError("elements must be distinct")
    raw = [g.images for g in elems]
    inverses = [g.inverse().images for g in elems]
    rows = []
    for gi, (g, g_inv) in enumerate(zip(raw, inverses)):
        row = []
        for h in raw:
            k = tuple(g[h[g_inv[i]]] for i in range(degree))
            ki = index.get(k)
            if ki is None:
                raise ValueError(
                    "not closed under conjugation: %s maps %s outside the set"
                    % (format_cycles(elems[gi]), format_cycles(Permutation(h)))
                )
            row.append(ki)
        rows.append(tuple(row))
    if labels is None:
        labels = [format_cycles(g) for g in elems]
    return FiniteRack(rows, labels=labels, elements=elems, check=False)


def class_rack(p, m):
    """Conjugation rack on the whole alternating class of the standard
    p-cycle at degree m, size m!/(2 p (m-p)!)."""
    natural_class(p, m)
    return conjugation_rack(list(class_elements(p, m)))


def subrack_closure(rack, seeds):
    """Indices of the smallest subrack containing the seeds.

    Closure under the operation alone suffices: each translation restricted
    to a finite closed subset is injective, hence bijective, so the inverse
    translations stay inside automatically.
    """
    table = rack.table
    members = set(seeds)
    if not members:
        return frozenset()
    if not all(0 <= s < rack.size for s in members):
        raise ValueError("seed out of range")
    queue = list(members)
    while queue:
        f = queue.pop()
        row_f = table[f]
        for x in list(members):
            for val in (row_f[x], table[x][f]):
                if val not in members:
                    members.add(val)
                    queue.append(val)
    return frozenset(members)


def maximal_abelian_subrack_through(rack, x):
    """Largest subrack containing x on which the operation is trivial,
    act(a, b) = b for all members a, b. Exact branch and bound maximum
    clique over the compatibility graph of x's neighborhood below 2000
    elements, greedy beyond that."""
    table = rack.table
    n = rack.size
    if table[x][x] != x:
        raise ValueError("point %d is not idempotent, no abelian subrack holds it" % x)
    neigh = [
        y
        for y in range(n)
        if y != x and table[x][y] == y and table[y][x] == x and table[y][y] == y
    ]
    if n >= 2000:
        chosen = [x]
        for y in neigh:
            if all(table[y][z] == z and table[z][y] == y for z in chosen if z != x):
                chosen.append(y)
        return frozenset(chosen)
    adj = {y: set() for y in neigh}
    for i, a in enumerate(neigh):
        for b in neigh[i + 1 :]:
            if table[a][b] == b and table[b][a] == a:
                adj[a].add(b)
                adj[b].add(a)

    best = []

    def extend(clique, candidates):
        nonlocal best
        if len(clique) + len(candidates) <= len(best):
            return
        if not candidates:
            if len(clique) > len(best):
                best = list(clique)
            return
        pivot = max(candidates, key=lambda v: len(adj[v] & candidates))
        for v in list(candidates - adj[pivot]):
            clique.append(v)
            extend(clique, candidates & adj[v])
            clique.pop()
            candidates = candidates - {v}

    extend([], set(neigh))
    return frozenset([x] + best)


@dataclass(frozen=True)
class TypeDWitness:
    """A verified pair: the squares of the two products differ and the two
    elements are not conjugate in the subgroup they generate. Stores enough
    evidence to re-run both checks from scratch."""

    sigma: Permutation
    tau: Permutation
    st_squared: Permutation
    ts_squared: Permutation
    subgroup_order: int
    orbit_answer: str

    def verify(self, cap=10_000_000):
        """Re-check both conditions directly from the stored pair."""
        result = type_d_pair(self.sigma, self.tau, cap=cap)
        return (
            result.verdict == "Witness"
            and result.witness.st_squared == self.st_squared
            and result.witness.ts_squared == self.ts_squared
            and result.witness.subgroup_order == self.subgroup_order
        )

    def to_json_dict(self):
        return {
            "sigma": self.sigma.to_json_dict(),
            "tau": self.tau.to_json_dict(),
            "subgroup_order": self.subgroup_order,
            "orbit_answer": self.orbit_answer,
        }

    @classmethod
    def from_json_dict(cls, data):
        sigma = Permutation.from_json_dict(data["sigma"])
        tau = Permutation.from_json_dict(data["tau"])
        st = sigma * tau
        ts = tau * sigma
        return cls(
            sigma=sigma,
            tau=tau,
            st_squared=st * st,
            ts_squared=ts * ts,
            subgroup_order=data["subgroup_order"],
            orbit_answer=data["orbit_answer"],
        )


@dataclass(frozen=True)
class TypeDResult:
    """Verdict on a pair: Ax1Fail, Ax2Fail, Witness, or Indeterminate when
    the conjugacy search inside the generated subgroup hit its cap."""

    verdict: str
    reason: str
    witness: Optional[TypeDWitness] = None
    subgroup_order: Optional[int] = None

    @property
    def decision(self):
        """True for Witness, False for either axiom failing, None when
        undecided."""
        if self.verdict == "Witness":
            return True
        if self.verdict == "Indeterminate":
            return None
        return False


def type_d_pair(sigma, tau, cap=10_000_000):
    """Test the two pair conditions: (st)^2 != (ts)^2, and s not conjugate
    to t inside the subgroup generated by the two.

    The square condition is checked first since it is cheap. The conjugacy
    question is decided through the generated subgroup's structure when it
    is a full alternating or symmetric group on its moved points, and by a
    capped orbit search otherwise; a capped search yields Indeterminate,
    never a guess.
    """
    if sigma.degree != tau.degree:
        raise ValueError("degree mismatch")
    st = sigma * tau
    ts = tau * sigma
    st2 = st * st
    ts2 = ts * ts
    if st2 == ts2:
        return TypeDResult("Ax1Fail", "squares of the two products agree")
    subgroup = build_bsgs([sigma, tau])
    probe = conjugacy_orbit_contains(subgroup, sigma, tau, cap=cap)
    if probe.answer == "capped":
        return TypeDResult(
            "Indeterminate",
            "conjugacy orbit search stopped at %d elements" % probe.visited,
            subgroup_order=subgroup.order,
        )
    if probe.answer == "yes":
        return TypeDResult(
            "Ax2Fail",
            "the two are conjugate in the subgroup they generate",
            subgroup_order=subgroup.order,
        )
    witness = TypeDWitness(
        sigma=sigma,
        tau=tau,
        st_squared=st2,
        ts_squared=ts2,
        subgroup_order=subgroup.order,
        orbit_answer=probe.answer,
    )
    return TypeDResult(
        "Witness",
        "squares differ and the two are not conjugate in the subgroup they generate",
        witness=witness,
        subgroup_order=subgroup.order,
    )


def power_map_candidates(rack_a, rack_b):
    """Index bijections induced by g -> g^l between conjugation racks.

    Natural first guesses for an isomorphism between class racks; they are
    not homomorphisms in general, so each guess still needs checking.
    Empty unless both racks carry permutations of one common order.
    """
    if rack_a.elements is None or rack_b.elements is None:
        return []
    if rack_a.size != rack_b.size:
        return []
    orders = {g.order() for g in rack_a.elements}
    if len(orders) != 1:
        return []
    o = orders.pop()
    index_b = {g: i for i, g in enumerate(rack_b.elements)}
    out = []
    for l in range(1, o):
        if gcd(l, o) != 1:
            continue
        images = []
        for g in rack_a.elements:
            t = index_b.get(g**l)
            if t is None:
                break
            images.append(t)
        else:
            if len(set(images)) == len(images):
                out.append(tuple(images))
    return out


def _is_isomorphism(rack_a, rack_b, f):
    n = rack_a.size
    if len(f) != n or len(set(f)) != n:
        return False
    ta, tb = rack_a.table, rack_b.table
    for x in range(n):
        fx = f[x]
        row_b = tb[fx]
        row_a = ta[x]
        for y in range(n):
            if row_b[f[y]] != f[row_a[y]]:
                return False
    return True


def _joint_refinement(rack_a, rack_b):
    """Iterated color refinement of both tables with shared color ids.

    Colors are stable under the operation in both directions, so any
    isomorphism preserves them. Returns (colors_a, colors_b) or None when
    the color multisets already rule an isomorphism out.
    """
    n = rack_a.size
    ta, tb = rack_a.table, rack_b.table
    ca = [0] * n
    cb = [0] * n
    while True:
        table_of_ids = {}

        def signature(colors, table, x):
            row = table[x]
            pairs = sorted(
                (colors[y], colors[row[y]], colors[table[y][x]]) for y in range(n)
            )
            return (colors[x], tuple(pairs))

        sigs_a = [signature(ca, ta, x) for x in range(n)]
        sigs_b = [signature(cb, tb, x) for x in range(n)]
        for s in sorted(set(sigs_a) | set(sigs_b)):
            table_of_ids[s] = len(table_of_ids)
        na = [table_of_ids[s] for s in sigs_a]
        nb = [table_of_ids[s] for s in sigs_b]
        if sorted(na) != sorted(nb):
            return None
        if na == ca and nb == cb:
            return ca, cb
        ca, cb = na, nb


def rack_isomorphic(rack_a, rack_b, candidates=None):
    """An operation-preserving bijection between the racks, or None.

    Power maps between conjugation racks are tried first when available,
    then candidate maps supplied by the caller, then a backtracking search
    over color-refined classes.
    """
    if rack_a.size != rack_b.size:
        return None
    n = rack_a.size
    tried = list(power_map_candidates(rack_a, rack_b))
    if candidates:
        tried.extend(tuple(c) for c in candidates)
    for f in tried:
        if _is_isomorphism(rack_a, rack_b, f):
            return tuple(f)
    refined = _joint_refinement(rack_a, rack_b)
    if refined is None:
        return None
    ca, cb = refined
    class_size = {}
    for c in ca:
        class_size[c] = class_size.get(c, 0) + 1
    order = sorted(range(n), key=lambda x: (class_size[ca[x]], ca[x], x))
    ta, tb = rack_a.table, rack_b.table
    f = [None] * n
    finv = [None] * n

    def consistent(x):
        """Check every constraint touching x among assigned vertices: images
        must agree where decided, and undecided images must not demand a
        target already claimed elsewhere or of the wrong color."""
        for y in range(n):
            if f[y] is None:
                continue
            for s, t in ((x, y), (y, x)):
                a_val = ta[s][t]
                b_val = tb[f[s]][f[t]]
                img = f[a_val]
                if img is not None:
                    if img != b_val:
                        return False
                elif finv[b_val] is not None or ca[a_val] != cb[b_val]:
                    return False
        return True

    def extend(k):
        if k == n:
            return True
        x = order[k]
        for u in range(n):
            if finv[u] is not None or cb[u] != ca[x]:
                continue
            f[x] = u
            finv[u] = x
            if consistent(x) and extend(k + 1):
                return True
            f[x] = None
            finv[u] = None
        return False

    if extend(0):
        return tuple(f)
    return None
