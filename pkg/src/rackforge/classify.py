"""Classification of p-cycle classes and the machinery behind it.

Four layers: the closed-form verdict for the class of p-cycles in the
alternating group of degree p or p+1; identification of the subgroup two
p-cycles generate against the thirteen-case list; witness search that
exhibits or refutes pairs satisfying the two axioms; and censuses over the
class (subrack closures, the square-commuting dichotomy, regular products
in the linear groups).

Searches fix the first element to the standard p-cycle: conjugation by any
even permutation carries pairs to pairs and preserves both axioms, so the
class acts transitively on first coordinates.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import islice
from math import factorial
from typing import Optional

from .constructions import (
    affine_frobenius_group,
    class_elements,
    natural_class,
    order_p_class_reps,
    psl_order,
    psl_permutation_group,
)
from .groups import (
    alternating_conjugate,
    alternating_group,
    build_bsgs,
    conjugacy_class_list,
)
from .numth import cyclotomic_decompositions, is_prime, prime_power_decompose
from .perm import Permutation, conjugate
from .rack import TypeDWitness, type_d_pair

__all__ = [
    "ClassVerdict",
    "classify_class",
    "FwCase",
    "fw_identify",
    "SearchOutcome",
    "witness_search",
    "symmetric_group_witness",
    "RegularProductReport",
    "regular_product_check",
    "CensusRow",
    "CensusReport",
    "subrack_census",
    "SquareCheckReport",
    "lemma_square_check",
    "DEEP_GATE",
]

# exhaustive enumeration above this class size requires deep=True
DEEP_GATE = 100_000


@dataclass(frozen=True)
class ClassVerdict:
    """Closed-form answer for the class of p-cycles at degree m."""

    p: int
    m: int
    verdict: str  # "TypeD" | "NotTypeD"
    reason: dict

    def to_json_dict(self):
        return {
            "p": self.p,
            "m": self.m,
            "verdict": self.verdict,
            "reason": self.reason,
        }


def classify_class(p, m):
    """Decide whether the class of p-cycles in the alternating group of
    degree m is of type D.

    For m = p the class is of type D exactly when p >= 13 and p is a
    cyclotomic prime (r^k - 1)/(r - 1); for m = p + 1 the threshold drops
    to p >= 7 with the same cyclotomic condition. The reason dict carries
    the decomposition list and, when it blocks, the threshold rule.
    """
    if not is_prime(p) or p < 5:
        raise ValueError("p must be prime >= 5")
    if m not in (p, p + 1):
        raise ValueError("m must be p or p+1")
    decomposition = [[r, k] for (r, k) in cyclotomic_decompositions(p)]
    threshold = 13 if m == p else 7
    if p >= threshold and decomposition:
        return ClassVerdict(p, m, "TypeD", {"cyclotomic": decomposition})
    reason = {"cyclotomic": decomposition}
    if p < threshold:
        reason["threshold"] = "p < %d" % threshold
    return ClassVerdict(p, m, "NotTypeD", reason)


@dataclass(frozen=True)
class FwCase:
    """Identification of the subgroup generated by two p-cycles: case tag,
    the support-union size m, the exact group order, and candidate names."""

    tag: str
    p: int
    m: int
    order: int
    names: tuple

    def to_json_dict(self):
        return {
            "tag": self.tag,
            "p": self.p,
            "m": self.m,
            "order": self.order,
            "names": list(self.names),
        }


def _case_candidates(p, m, order):
    """All case-table rows matching (p, m, order). Each row is (tag, name)."""
    out = []
    if m == p and order == p:
        out.append(("i", "Z/%d" % p))
    if m == 2 * p and order == p * p:
        out.append(("ii", "Z/%d x Z/%d" % (p, p)))
    if m == p:
        for r, k in cyclotomic_decompositions(p):
            if order == psl_order(k, r):
                out.append(("iii", "L_%d(%d)" % (k, r)))
    if m == p + 2 and prime_power_decompose(p + 1) is not None:
        if order == psl_order(2, p + 1):
            out.append(("iv", "L_2(%d)" % (p + 1)))
    if m == p + 1 and order == psl_order(2, p):
        out.append(("v", "L_2(%d)" % p))
    if m == p == 11:
        if order == 660:
            out.append(("vi", "L_2(11)"))
        if order == 7920:
            out.append(("vi", "M_11"))
    if m == p == 23 and order == 10_200_960:
        out.append(("vii", "M_23"))
    if m == 12 and p == 11:
        if order == 95_040:
            out.append(("viii", "M_12"))
        if order == 7920:
            out.append(("viii", "M_11"))
        if order == 660:
            out.append(("viii", "L_2(11)"))
    if m == 24 and p == 23 and order == 244_823_040:
        out.append(("ix", "M_24"))
    if m == p + 1:
        two_power = prime_power_decompose(m)
        if two_power is not None and two_power[0] == 2 and order == m * p:
            out.append(("x", "Frobenius(%d)" % (m * p)))
        if two_power is not None and two_power[0] == 2 and two_power[1] != 3:
            k = two_power[1]
            if order == m * psl_order(k, 2):
                out.append(("xi", "2^%d:L_%d(2)" % (k, k)))
    if m == 3 and order == 6:
        out.append(("xii", "S_3"))
    if order == factorial(m) // 2:
        out.append(("xiii", "A_%d" % m))
    return out


def _resolve_case(p, m, order, candidates):
    """Collapse same-group tag overlaps; Ambiguous is reserved for rows
    naming genuinely distinct groups."""
    tags = {tag for tag, _ in candidates}
    if len(candidates) <= 1:
        pass
    elif tags == {"iii", "xiii"} and m == p:
        # one cyclotomic form makes L_k(r) the alternating group itself,
        # e.g. L_2(4) = A_5; a single group, reported under the alternating tag
        return FwCase("xiii", p, m, order, tuple(name for _, name in reversed(candidates)))
    elif tags == {"v", "viii"}:
        # L_2(11) on 12 points is both the generic L_2(p) row and the
        # (11,12)-specific row; a single group
        return FwCase("viii", p, m, order, ("L_2(11)",))
    elif len(tags) > 1:
        return FwCase("Ambiguous", p, m, order, tuple(name for _, name in candidates))
    if not candidates:
        raise ValueError(
            "no case matches p=%d, m=%d, order=%d; outside the thirteen-case table"
            % (p, m, order)
        )
    tag = candidates[0][0]
    return FwCase(tag, p, m, order, tuple(name for _, name in candidates))


def _p_cycle_prime(perm):
    """The prime p when perm is a p-cycle (all other points fixed)."""
    lengths = [len(c) for c in perm.cycles()]
    if len(lengths) != 1 or not is_prime(lengths[0]):
        raise ValueError("expected a p-cycle with p prime, got %s" % perm)
    return lengths[0]


def fw_identify(sigma, tau, subgroup=None):
    """Match the subgroup generated by two p-cycles against the case table.

    m is the size of the union of the two supports; the order comes from a
    stabilizer chain (or a caller-provided group to avoid recomputation).
    A pair whose (m, order) matches no row raises, since the table is
    exhaustive for pairs of p-cycles.
    """
    p = _p_cycle_prime(sigma)
    if _p_cycle_prime(tau) != p:
        raise ValueError("the two cycles must have one common prime length")
    if sigma.degree != tau.degree:
        raise ValueError("degree mismatch")
    m = len(set(sigma.support()) | set(tau.support()))
    if subgroup is None:
        subgroup = build_bsgs([sigma, tau])
    order = subgroup.order
    return _resolve_case(p, m, order, _case_candidates(p, m, order))


@dataclass(frozen=True)
class SearchOutcome:
    """Result of a witness search: found, proven absent, or budget ran out.

    Absence is only ever claimed after a completed exhaustive enumeration
    with no indeterminate verdicts.
    """

    p: int
    m: int
    strategy: str
    status: str  # "witness" | "absence" | "exhausted"
    witness: Optional[TypeDWitness]
    pairs_tested: int
    indeterminate: int
    seed: Optional[int] = None
    budget: Optional[int] = None

    def to_json_dict(self):
        out = {
            "p": self.p,
            "m": self.m,
            "strategy": self.strategy,
            "status": self.status,
            "pairs_tested": self.pairs_tested,
            "indeterminate": self.indeterminate,
            "seed": self.seed,
            "budget": self.budget,
        }
        out["witness"] = self.witness.to_json_dict() if self.witness else None
        return out


def thread_count(threads=None):
    """Worker count: explicit argument, else RACKFORGE_THREADS, else the
    machine's available parallelism."""
    if threads is not None:
        return max(1, int(threads))
    env = os.environ.get("RACKFORGE_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _aligning_conjugator(source, target_degree=None):
    """A permutation g with g source g^-1 = the standard p-cycle, built by
    matching cycle orders; fixed points map to fixed points in sorted order.
    Parity is whatever it is: any parity preserves the class half of a
    same-half pair when both coordinates are conjugated."""
    m = source.degree if target_degree is None else target_degree
    cyc = source.cycles()[0]
    p = len(cyc)
    images = [None] * m
    for pos, a in enumerate(cyc):
        images[a - 1] = pos
    rest = [q for q in range(1, m + 1) if q not in set(cyc)]
    for offset, a in enumerate(rest):
        images[a - 1] = p + offset
    return Permutation(images)


def _normalize_pair(sigma, tau, p, m):
    """Carry (sigma, tau) to (standard p-cycle, tau'), conjugating both."""
    g = _aligning_conjugator(sigma, m)
    new_sigma = conjugate(g, sigma)
    new_tau = conjugate(g, tau)
    nat = natural_class(p, m).sigma
    if new_sigma != nat:
        raise AssertionError("alignment failed to produce the standard cycle")
    return nat, new_tau


def _scan_chunk(sigma, chunk, cap):
    """Evaluate pairs (sigma, tau) for taus in an indexed chunk; returns
    (first witness index or None, witness, indeterminate count)."""
    indeterminate = 0
    for idx, tau in chunk:
        result = type_d_pair(sigma, tau, cap=cap)
        if result.verdict == "Witness":
            return idx, result.witness, indeterminate
        if result.verdict == "Indeterminate":
            indeterminate += 1
    return None, None, indeterminate


def _parallel_scan(sigma, taus, threads, cap=10_000_000):
    """Deterministic first-witness-by-index scan over candidate taus.

    Candidates are pre-partitioned into fixed chunks, so the winning index
    is independent of the worker count.
    """
    indexed = list(enumerate(taus))
    total = len(indexed)
    workers = thread_count(threads)
    if workers <= 1 or total < 128:
        idx, witness, indet = _scan_chunk(sigma, indexed, cap)
        return witness, (idx + 1 if idx is not None else total), indet
    chunk_size = max(64, total // (workers * 8))
    chunks = [indexed[i : i + chunk_size] for i in range(0, total, chunk_size)]
    hits = []
    indet = 0
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for idx, witness, chunk_indet in pool.map(
            lambda ch: _scan_chunk(sigma, ch, cap), chunks
        ):
            indet += chunk_indet
            if idx is not None:
                hits.append((idx, witness))
    if hits:
        idx, witness = min(hits, key=lambda pair: pair[0])
        # counted as if the scan stopped at the winner
        return witness, idx + 1, indet
    return None, total, indet


def witness_search(p, m, strategy="subgroup", budget=None, seed=0, deep=False, threads=None):
    """Search the class of p-cycles at degree m for a pair satisfying both
    axioms, the first element pinned to the standard p-cycle.

    exhaustive: every class element as tau (proves absence when it
    completes with no indeterminates); gated by deep beyond 100000 elements.
    random: seeded uniform conjugates of the standard cycle.
    subgroup: candidate pairs inside the linear groups attached to the
    cyclotomic decompositions of p, plus the affine Frobenius group when
    m = p + 1 is a power of two; representatives of two distinct order-p
    subgroup classes in the same alternating half, the second scanned over
    its whole subgroup class.

    Every witness is re-verified from scratch before being returned.
    """
    spec = natural_class(p, m)
    sigma = spec.sigma
    if strategy == "exhaustive":
        if spec.class_size > DEEP_GATE and not deep:
            raise ValueError(
                "exhaustive search over %d elements needs deep=True" % spec.class_size
            )
        limit = spec.class_size if budget is None else min(budget, spec.class_size)
        tested = 0
        indet = 0
        stream = class_elements(p, m)
        # streamed in fixed batches to bound memory at deep class sizes
        while tested < limit:
            batch = list(islice(stream, min(16384, limit - tested)))
            if not batch:
                break
            witness, scanned, batch_indet = _parallel_scan(sigma, batch, threads)
            indet += batch_indet
            if witness is not None:
                tested += scanned
                checked = _reverify(witness, p, m)
                return SearchOutcome(
                    p, m, strategy, "witness", checked, tested, indet, seed, budget
                )
            tested += len(batch)
        if tested == spec.class_size and indet == 0:
            return SearchOutcome(p, m, strategy, "absence", None, tested, indet, seed, budget)
        return SearchOutcome(p, m, strategy, "exhausted", None, tested, indet, seed, budget)

    if strategy == "random":
        limit = 10_000 if budget is None else budget
        rng = random.Random(seed)
        ambient = alternating_group(m)
        batch = []
        for _ in range(limit):
            g = ambient.sample(rng)
            batch.append(conjugate(g, sigma))
        witness, tested, indet = _parallel_scan(sigma, batch, threads)
        if witness is not None:
            checked = _reverify(witness, p, m)
            return SearchOutcome(p, m, strategy, "witness", checked, tested, indet, seed, budget)
        return SearchOutcome(p, m, strategy, "exhausted", None, tested, indet, seed, budget)

    if strategy == "subgroup":
        tested = 0
        indet = 0
        limit = budget if budget is not None else 1_000_000
        for group in _candidate_subgroups(p, m, seed):
            reps = order_p_class_reps(group, p, seed=seed)
            for i, first in enumerate(reps):
                for j, second in enumerate(reps):
                    if i == j:
                        continue
                    if not alternating_conjugate(first, second, m):
                        continue
                    for tau in conjugacy_class_list(group, second):
                        if tested >= limit:
                            return SearchOutcome(
                                p, m, strategy, "exhausted", None, tested, indet, seed, budget
                            )
                        tested += 1
                        result = type_d_pair(first, tau)
                        if result.verdict == "Indeterminate":
                            indet += 1
                            continue
                        if result.verdict == "Witness":
                            nat, new_tau = _normalize_pair(first, tau, p, m)
                            final = type_d_pair(nat, new_tau)
                            if final.verdict != "Witness":
                                raise AssertionError(
                                    "normalized pair lost the witness property"
                                )
                            checked = _reverify(final.witness, p, m)
                            return SearchOutcome(
                                p, m, strategy, "witness", checked, tested, indet, seed, budget
                            )
        return SearchOutcome(p, m, strategy, "exhausted", None, tested, indet, seed, budget)

    raise ValueError("unknown strategy %r" % strategy)


def _candidate_subgroups(p, m, seed):
    """Groups searched by the subgroup strategy, all at degree m."""
    for r, k in cyclotomic_decompositions(p):
        group = psl_permutation_group(k, r)
        if group.degree != p:
            continue
        gens = [g.extend(m) for g in group.generators]
        yield build_bsgs(gens, degree=m)
    if m == p + 1:
        two_power = prime_power_decompose(m)
        if two_power is not None and two_power[0] == 2:
            yield affine_frobenius_group(two_power[1])


def _reverify(witness, p, m):
    """Independent re-check of a found witness: both elements in the class
    of the standard p-cycle and both axioms satisfied."""
    nat = natural_class(p, m).sigma
    if witness.sigma != nat:
        raise AssertionError("witness first coordinate is not the standard cycle")
    if not alternating_conjugate(nat, witness.tau, m):
        raise AssertionError("witness second coordinate left the class")
    if not witness.verify():
        raise AssertionError("stored witness failed re-verification")
    return witness


def symmetric_group_witness(p):
    """The explicit pair for the symmetric-group class of p-cycles:
    sigma the standard cycle, tau its conjugate by the transposition of 1
    and 3. The two lie in different alternating halves, so no even
    subgroup can conjugate one to the other; verification is loud."""
    if not is_prime(p) or p < 5:
        raise ValueError("p must be prime >= 5")
    sigma = Permutation.cycle(list(range(1, p + 1)), p)
    swap = Permutation.cycle([1, 3], p)
    tau = conjugate(swap, sigma)
    if alternating_conjugate(sigma, tau, p):
        raise AssertionError("conjugate by a transposition stayed in the same half")
    result = type_d_pair(sigma, tau)
    if result.verdict != "Witness":
        raise AssertionError("the standard symmetric-class pair failed: %s" % result.reason)
    return result.witness


@dataclass(frozen=True)
class RegularProductReport:
    """Per ordered pair of distinct order-p classes in L_k(r): whether some
    tau in the second class gives sigma tau of order outside {1, 2, p}."""

    k: int
    r: int
    p: int
    group_order: int
    class_count: int
    class_size: int
    pairs: tuple  # (i, j, found, example_order or None)

    @property
    def all_found(self):
        return all(found for _, _, found, _ in self.pairs)

    def to_json_dict(self):
        return {
            "k": self.k,
            "r": self.r,
            "p": self.p,
            "group_order": self.group_order,
            "class_count": self.class_count,
            "class_size": self.class_size,
            "pairs": [
                {"first": i, "second": j, "found": found, "example_order": ex}
                for i, j, found, ex in self.pairs
            ],
            "all_found": self.all_found,
        }


def regular_product_check(k, r, seed=0):
    """Exhaustively search each ordered pair of distinct order-p classes of
    L_k(r) for a product of order outside {1, 2, p}."""
    q = sum(r**i for i in range(k))
    if not is_prime(q):
        raise ValueError("(r^k - 1)/(r - 1) = %d is not prime" % q)
    p = q
    group = psl_permutation_group(k, r)
    reps = order_p_class_reps(group, p, seed=seed)
    classes = [conjugacy_class_list(group, rep) for rep in reps]
    rows = []
    for i, first in enumerate(reps):
        for j, second_class in enumerate(classes):
            if i == j:
                continue
            found = False
            example = None
            for tau in second_class:
                order = (first * tau).order()
                if order not in (1, 2, p):
                    found = True
                    example = order
                    break
            rows.append((i, j, found, example))
    return RegularProductReport(
        k=k,
        r=r,
        p=p,
        group_order=group.order,
        class_count=len(reps),
        class_size=len(classes[0]) if classes else 0,
        pairs=tuple(rows),
    )


@dataclass(frozen=True)
class CensusRow:
    closure_size: int
    case_tag: str
    subgroup_order: int
    abelian: bool
    count: int

    def to_json_dict(self):
        return {
            "closure_size": self.closure_size,
            "case_tag": self.case_tag,
            "subgroup_order": self.subgroup_order,
            "abelian": self.abelian,
            "count": self.count,
        }


@dataclass(frozen=True)
class CensusReport:
    p: int
    m: int
    exhaustive: bool
    pairs: int
    rows: tuple

    def to_json_dict(self):
        return {
            "p": self.p,
            "m": self.m,
            "exhaustive": self.exhaustive,
            "pairs": self.pairs,
            "rows": [row.to_json_dict() for row in self.rows],
        }


def _closure_size(sigma, tau, subgroup, m):
    """|sigma^H union tau^H| for H generated by the pair: the closure of
    {sigma, tau} consists of exactly these conjugates, since every element
    of the closure is a word conjugate and every word conjugate arises."""
    moved = subgroup.moved_points()
    u = len(moved)
    if u >= 3 and subgroup.order == factorial(u) // 2:
        # H is the alternating group on its moved points; count p-cycles in
        # closed form. The symmetric class splits in Alt(U) exactly when the
        # cycle type is all odd lengths, all distinct, i.e. u - p <= 1 here.
        p = len(sigma.cycles()[0])
        total = factorial(u) // (p * factorial(u - p))
        if u - p > 1:
            return total
        sr = sigma.restricted_to(moved)
        tr = tau.restricted_to(moved)
        return total // 2 if alternating_conjugate(sr, tr, u) else total
    first = conjugacy_class_list(subgroup, sigma)
    if tau in set(first):
        return len(first)
    return len(first) + len(conjugacy_class_list(subgroup, tau))


def subrack_census(p, m, budget=None, seed=0):
    """Histogram of (closure size, case tag) over pairs in the class, the
    first element pinned to the standard cycle.

    Exhaustive when the class size fits the budget (default 10000),
    otherwise seeded uniform sampling; the report records which. For the
    class of 7-cycles on 7 points every proper non-abelian closure must
    have 24 elements, asserted here."""
    spec = natural_class(p, m)
    sigma = spec.sigma
    limit = 10_000 if budget is None else budget
    exhaustive = spec.class_size <= limit
    if exhaustive:
        taus = class_elements(p, m)
        total = spec.class_size
    else:
        rng = random.Random(seed)
        ambient = alternating_group(m)
        taus = (conjugate(ambient.sample(rng), sigma) for _ in range(limit))
        total = limit
    counter = {}
    for tau in taus:
        subgroup = build_bsgs([sigma, tau])
        case = fw_identify(sigma, tau, subgroup=subgroup)
        size = _closure_size(sigma, tau, subgroup, m)
        abelian = subgroup.order in (p, p * p)
        key = (size, case.tag, subgroup.order, abelian)
        counter[key] = counter.get(key, 0) + 1
    rows = tuple(
        CensusRow(closure_size=s, case_tag=t, subgroup_order=o, abelian=a, count=c)
        for (s, t, o, a), c in sorted(counter.items())
    )
    if (p, m) == (7, 7) and exhaustive:
        for row in rows:
            if not row.abelian and row.closure_size != spec.class_size:
                if row.closure_size != 24:
                    raise AssertionError(
                        "proper non-abelian closure of size %d in the 7-cycle class"
                        % row.closure_size
                    )
    return CensusReport(p=p, m=m, exhaustive=exhaustive, pairs=total, rows=rows)


@dataclass(frozen=True)
class SquareCheckReport:
    """Over pairs with (st)^2 = (ts)^2: they commute or st has order 2,
    and the generated subgroup has order at most p^2. Violations record the
    offending tau, which clause broke, and the observed order."""

    p: int
    m: int
    exhaustive: bool
    pairs_checked: int
    square_pairs: int
    commuting: int
    order_two: int
    violations: tuple

    @property
    def holds(self):
        return not self.violations

    def to_json_dict(self):
        return {
            "p": self.p,
            "m": self.m,
            "exhaustive": self.exhaustive,
            "pairs_checked": self.pairs_checked,
            "square_pairs": self.square_pairs,
            "commuting": self.commuting,
            "order_two": self.order_two,
            "violations": [
                {"tau": str(tau), "clause": clause, "order": order}
                for tau, clause, order in self.violations
            ],
            "holds": self.holds,
        }


def lemma_square_check(p, m, budget=None, seed=0):
    """Verify the square dichotomy over the class, first element pinned."""
    spec = natural_class(p, m)
    sigma = spec.sigma
    limit = 10_000 if budget is None else budget
    exhaustive = spec.class_size <= limit
    if exhaustive:
        taus = class_elements(p, m)
        checked = spec.class_size
    else:
        rng = random.Random(seed)
        ambient = alternating_group(m)
        taus = (conjugate(ambient.sample(rng), sigma) for _ in range(limit))
        checked = limit
    square_pairs = commuting = order_two = 0
    violations = []
    for tau in taus:
        st = sigma * tau
        ts = tau * sigma
        if st * st != ts * ts:
            continue
        square_pairs += 1
        if st == ts:
            commuting += 1
        elif st.order() == 2:
            order_two += 1
        else:
            violations.append((tau, "dichotomy", st.order()))
        order = build_bsgs([sigma, tau]).order
        if order > p * p:
            violations.append((tau, "order bound", order))
    return SquareCheckReport(
        p=p,
        m=m,
        exhaustive=exhaustive,
        pairs_checked=checked,
        square_pairs=square_pairs,
        commuting=commuting,
        order_two=order_two,
        violations=tuple(violations),
    )
