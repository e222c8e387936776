"""Combinatorial structures behind the diameter-2 proofs, built explicitly so
every degree bound, partition claim, and exclusion condition can be checked by
brute force on small groups.

All element arguments are group indices; x is always a non-identity element
and vertices range over the group minus {identity, x} where noted.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .graphs import LatinSquare
from .groups import GroupTable

TYPES = ("T1", "T2a", "T2b", "T3", "T4")


# -- auxiliary pair graphs (Gamma_x) --------------------------------------------


@dataclass(frozen=True)
class GammaX:
    """Graph whose edges are generator pairs jointly witnessing an
    identity-to-x path of length two.  Loops are permitted and counted once."""

    order: int
    x: int
    neighbors: tuple[tuple[int, ...], ...]

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])

    def degrees(self) -> list[int]:
        return [len(nb) for nb in self.neighbors]

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset((min(g, h), max(g, h))
                         for g, nbs in enumerate(self.neighbors) for h in nbs)

    @property
    def edge_count(self) -> int:
        return len(self.edge_set())


def _gamma_candidates(g: GroupTable, x: int, v: int) -> set[int]:
    xi = g.inv(x)
    vi = g.inv(v)
    return {
        g.mul(x, v), g.mul(x, vi), g.mul(xi, v), g.mul(xi, vi),
        g.mul(v, x), g.mul(v, xi), g.mul(vi, x), g.mul(vi, xi),
    }


def build_gamma_x(g: GroupTable, x: int) -> GammaX:
    """Neighbours of v are the <= 8 products {xv, xv^-1, x^-1v, x^-1v^-1,
    vx, vx^-1, v^-1x, v^-1x^-1}."""
    if x == 0:
        raise ValueError("x must not be the identity")
    nbrs = tuple(tuple(sorted(_gamma_candidates(g, x, v))) for v in range(g.order))
    gx = GammaX(order=g.order, x=x, neighbors=nbrs)
    degs = gx.degrees()
    assert min(degs) >= 1 and max(degs) <= 8
    if g.is_abelian:
        assert max(degs) <= 4
    assert g.order / 2 <= gx.edge_count <= 4 * g.order
    return gx


def gamma_membership_count(g: GroupTable, pair: tuple[int, int]) -> int:
    """Number of x for which the pair is adjacent in Gamma_x; at most 8."""
    a, b = pair
    if a == b:
        raise ValueError("pair elements must be distinct")
    ai, bi = g.inv(a), g.inv(b)
    candidates = {
        g.mul(b, a), g.mul(b, ai), g.mul(bi, a), g.mul(bi, ai),
        g.mul(a, b), g.mul(a, bi), g.mul(ai, b), g.mul(ai, bi),
    } - {0}
    for x in candidates:
        assert b in _gamma_candidates(g, x, a)
    count = len(candidates)
    assert count <= 8
    return count


def build_common_edge_set_A(g: GroupTable, eps: float) -> list[int]:
    """Greedy independent set in the graph joining x ~ y when Gamma_x and
    Gamma_y share more than 30 n^(1-eps) edges; its size is at least
    n^(1-eps)."""
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie in (0, 1)")
    n = g.order
    if n > 300:
        raise ValueError("quadratic pair cost: order must be at most 300")
    owners: dict[tuple[int, int], list[int]] = {}
    for x in range(1, n):
        for e in build_gamma_x(g, x).edge_set():
            owners.setdefault(e, []).append(x)
    common: dict[tuple[int, int], int] = {}
    for xs in owners.values():
        for x, y in itertools.combinations(xs, 2):
            common[(x, y)] = common.get((x, y), 0) + 1
    threshold = 30 * n ** (1 - eps)
    heavy: dict[int, set[int]] = {x: set() for x in range(1, n)}
    for (x, y), cnt in common.items():
        if cnt > threshold:
            heavy[x].add(y)
            heavy[y].add(x)
    out: list[int] = []
    chosen: set[int] = set()
    for x in range(1, n):
        if heavy[x].isdisjoint(chosen):
            out.append(x)
            chosen.add(x)
    assert len(out) >= n ** (1 - eps)
    return out


# -- the five-type vertex partition ---------------------------------------------


@dataclass(frozen=True)
class TypePartition:
    """Labels over the group minus {identity, x}; overlap_findings records any
    vertex matching both the square-root-of-x equation and a type 1/2
    equation (expected empty, reported rather than silently reordered)."""

    x: int
    label: dict[int, str]
    overlap_findings: tuple[int, ...] = ()

    def counts(self) -> dict[str, int]:
        out = {t: 0 for t in TYPES}
        for t in self.label.values():
            out[t] += 1
        return out

    def of_type(self, *types: str) -> list[int]:
        return sorted(y for y, t in self.label.items() if t in types)


def classify_types(g: GroupTable, x: int) -> TypePartition:
    """First matching label in the order T1, T2a, T2b, T3, T4 where
    T1: y = y^-1 and xy^-1 = yx^-1;  T2a: y = y^-1 only;
    T2b: xy^-1 = yx^-1 only;         T3: y = xy^-1;     T4: the rest."""
    if x == 0:
        raise ValueError("x must not be the identity")
    xi = g.inv(x)
    label: dict[int, str] = {}
    overlaps: list[int] = []
    for y in range(g.order):
        if y == 0 or y == x:
            continue
        yi = g.inv(y)
        self_inverse = y == yi
        balanced = g.mul(x, yi) == g.mul(y, xi)
        sqrt_of_x = y == g.mul(x, yi)
        if self_inverse and balanced:
            t = "T1"
        elif self_inverse:
            t = "T2a"
        elif balanced:
            t = "T2b"
        elif sqrt_of_x:
            t = "T3"
        else:
            t = "T4"
        if sqrt_of_x and t in ("T1", "T2a", "T2b"):
            overlaps.append(y)
        label[y] = t
    return TypePartition(x=x, label=label, overlap_findings=tuple(overlaps))


# -- the dependency graph H ------------------------------------------------------


@dataclass(frozen=True)
class DependencyGraphH:
    """Graph on the group minus {identity, x} joining events that share a
    witnessing generator; maximum degree six."""

    x: int
    neighbors: dict[int, tuple[int, ...]]

    def degree(self, y: int) -> int:
        return len(self.neighbors[y])

    def max_degree(self) -> int:
        return max((len(nb) for nb in self.neighbors.values()), default=0)


def _h_candidates(g: GroupTable, x: int, y: int) -> list[int]:
    yi = g.inv(y)
    xi = g.inv(x)
    xyi = g.mul(x, yi)
    return [yi, g.mul(y, xi), xyi, g.mul(xyi, x), g.mul(y, x), g.mul(yi, x)]


def build_H(g: GroupTable, x: int) -> DependencyGraphH:
    """Adjacency via the candidate list {y^-1, yx^-1, xy^-1, xy^-1x, yx, y^-1x}
    with z != y and z outside {identity, x}."""
    if x == 0:
        raise ValueError("x must not be the identity")
    nbrs: dict[int, tuple[int, ...]] = {}
    for y in range(g.order):
        if y in (0, x):
            continue
        cands = {z for z in _h_candidates(g, x, y) if z != y and z not in (0, x)}
        nbrs[y] = tuple(sorted(cands))
    h = DependencyGraphH(x=x, neighbors=nbrs)
    assert h.max_degree() <= 6
    for y, nbs in h.neighbors.items():
        for z in nbs:
            assert y in h.neighbors[z], "H adjacency must be symmetric"
    return h


def check_H_intersection_rule(g: GroupTable, x: int, h: DependencyGraphH | None = None) -> list[tuple[int, int]]:
    """Cross-check the candidate-list adjacency against the defining rule
    {y, y^-1, yx^-1, xy^-1} meets {z, z^-1, zx^-1, xz^-1}.  Returns mismatching
    pairs (expected none); quadratic, intended for small orders."""
    if h is None:
        h = build_H(g, x)
    xi = g.inv(x)

    def witness_set(y: int) -> frozenset[int]:
        yi = g.inv(y)
        return frozenset((y, yi, g.mul(y, xi), g.mul(x, yi)))

    ws = {y: witness_set(y) for y in h.neighbors}
    bad = []
    ys = sorted(h.neighbors)
    for i, y in enumerate(ys):
        for z in ys[i + 1:]:
            rule = not ws[y].isdisjoint(ws[z])
            listed = z in h.neighbors[y]
            if rule != listed:
                bad.append((y, z))
    return bad


def check_H_type_neighbors(g: GroupTable, x: int,
                           partition: TypePartition | None = None,
                           h: DependencyGraphH | None = None) -> list[tuple[int, str]]:
    """Verify the per-type closed forms of N_H(y):

        T1: {xy, yx}   T2a: {yx^-1, xy, xyx, yx}   T2b: {y^-1, xy^-1, yx, y^-1x}
        T3: {y^-1, y^3}   T4: the full six-candidate list

    up to removal of the identity, x, and y itself.  Returns mismatches."""
    if partition is None:
        partition = classify_types(g, x)
    if h is None:
        h = build_H(g, x)
    xi = g.inv(x)
    bad = []
    for y, t in partition.label.items():
        yi = g.inv(y)
        if t == "T1":
            expected = [g.mul(x, y), g.mul(y, x)]
        elif t == "T2a":
            expected = [g.mul(y, xi), g.mul(x, y), g.mul(g.mul(x, y), x), g.mul(y, x)]
        elif t == "T2b":
            expected = [yi, g.mul(x, yi), g.mul(y, x), g.mul(yi, x)]
        elif t == "T3":
            expected = [yi, g.mul(g.mul(y, y), y)]
        else:
            expected = _h_candidates(g, x, y)
        cleaned = tuple(sorted({z for z in expected if z != y and z not in (0, x)}))
        if cleaned != h.neighbors[y]:
            bad.append((y, t))
    return bad


# -- claims about H ---------------------------------------------------------------


def verify_claim_type1_closed(g: GroupTable, x: int,
                              partition: TypePartition | None = None,
                              h: DependencyGraphH | None = None) -> bool:
    """Type 1 vertices are adjacent only to Type 1 vertices."""
    if partition is None:
        partition = classify_types(g, x)
    if h is None:
        h = build_H(g, x)
    return all(partition.label[z] == "T1"
               for y in partition.of_type("T1") for z in h.neighbors[y])


@dataclass(frozen=True)
class FourColorReport:
    four_colorable: bool
    has_five_clique: bool
    coloring: dict[int, int] = field(default_factory=dict, repr=False)

    def __bool__(self) -> bool:
        return self.four_colorable and not self.has_five_clique


def verify_claim_type2_colorable(g: GroupTable, x: int,
                                 partition: TypePartition | None = None,
                                 h: DependencyGraphH | None = None) -> FourColorReport:
    """The subgraph induced by Type 2a/2b vertices is properly 4-colorable
    (exact backtracking search) and contains no 5-clique."""
    if partition is None:
        partition = classify_types(g, x)
    if h is None:
        h = build_H(g, x)
    verts = partition.of_type("T2a", "T2b")
    vset = set(verts)
    adj = {y: [z for z in h.neighbors[y] if z in vset] for y in verts}
    order = sorted(verts, key=lambda y: -len(adj[y]))
    coloring: dict[int, int] = {}

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        y = order[i]
        used = {coloring[z] for z in adj[y] if z in coloring}
        for col in range(4):
            if col not in used:
                coloring[y] = col
                if extend(i + 1):
                    return True
                del coloring[y]
        return False

    ok = extend(0)
    has_k5 = False
    for y in verts:
        if len(adj[y]) < 4:
            continue
        for quad in itertools.combinations(adj[y], 4):
            if all(b in adj[a] for a, b in itertools.combinations(quad, 2)):
                has_k5 = True
                break
        if has_k5:
            break
    return FourColorReport(four_colorable=ok, has_five_clique=has_k5,
                           coloring=dict(coloring) if ok else {})


@dataclass(frozen=True)
class BPartition:
    """Greedy independent-set partition feeding the exponent bound:
    B1 = all Type 1; B3, B4, B2 greedy maximal independent sets (ascending
    element order) over Types 3, 4, 2a+2b, successively avoiding neighbours
    of the earlier sets."""

    x: int
    b1: tuple[int, ...]
    b2: tuple[int, ...]
    b3: tuple[int, ...]
    b4: tuple[int, ...]

    @property
    def sizes(self) -> tuple[int, int, int, int]:
        return (len(self.b1), len(self.b2), len(self.b3), len(self.b4))

    def weighted_sum(self) -> int:
        b1, b2, b3, b4 = self.sizes
        return b1 + 4 * b2 + 3 * b3 + 7 * b4


def build_B_partition(g: GroupTable, x: int,
                      partition: TypePartition | None = None,
                      h: DependencyGraphH | None = None) -> BPartition:
    if x == 0:
        raise ValueError("x must not be the identity")
    if partition is None:
        partition = classify_types(g, x)
    if h is None:
        h = build_H(g, x)

    def greedy(candidates: list[int], blocked: set[int]) -> list[int]:
        out: list[int] = []
        chosen: set[int] = set()
        for y in candidates:
            if y in blocked:
                continue
            if chosen.isdisjoint(h.neighbors[y]):
                out.append(y)
                chosen.add(y)
        return out

    b1 = partition.of_type("T1")
    b3 = greedy(partition.of_type("T3"), set())
    blocked = {z for y in b3 for z in h.neighbors[y]}
    b4 = greedy(partition.of_type("T4"), blocked)
    blocked |= {z for y in b4 for z in h.neighbors[y]}
    b2 = greedy(partition.of_type("T2a", "T2b"), blocked)
    bp = BPartition(x=x, b1=tuple(b1), b2=tuple(b2), b3=tuple(b3), b4=tuple(b4))
    assert bp.weighted_sum() >= g.order - 2, (
        f"partition inequality failed at x={x}: sizes {bp.sizes}")
    return bp


# -- exact cycle probability -------------------------------------------------------


def cycle_no_adjacent_prob(k: int, p):
    """Probability that an independent p-sample of a k-cycle's vertices
    contains no two cyclically consecutive vertices (1 and k are consecutive).

    Transfer-matrix trace of [[q, p], [q, 0]]^k with q = 1 - p; exact when p
    is a Fraction, float otherwise.
    """
    if k < 1:
        raise ValueError("k must be positive")
    exact = isinstance(p, Fraction)
    q = (Fraction(1) - p) if exact else (1.0 - p)
    zero = Fraction(0) if exact else 0.0
    one = Fraction(1) if exact else 1.0

    def matmul(a, b):
        return (
            (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
            (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
        )

    result = ((one, zero), (zero, one))
    base = ((q, p), (q, zero))
    e = k
    while e:
        if e & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        e >>= 1
    return result[0][0] + result[1][1]


# -- inverse-pair equivalence classes ----------------------------------------------


@dataclass(frozen=True)
class EquivClassIndex:
    """Classes of the relation y ~ z iff y = z or y = z^-1; singletons are
    exactly the square roots of the identity."""

    class_of: np.ndarray
    class_sizes: np.ndarray

    def size_of(self, y: int) -> int:
        return int(self.class_sizes[self.class_of[y]])


def build_equiv_classes(g: GroupTable) -> EquivClassIndex:
    inv = np.asarray(g.inv_all())
    idx = np.arange(g.order)
    rep = np.minimum(idx, inv)
    reps, class_of = np.unique(rep, return_inverse=True)
    sizes = np.bincount(class_of)
    ecl = EquivClassIndex(class_of=class_of.astype(np.int64),
                          class_sizes=sizes.astype(np.int64))
    assert int(ecl.class_sizes.sum()) == g.order
    assert all((ecl.size_of(y) == 1) == (g.squares()[y] == 0) for y in range(g.order))
    return ecl


# -- the sets S(x) and I(x) ---------------------------------------------------------


def build_S_set(g: GroupTable, x: int) -> list[int]:
    """All y with y^2 and (y^-1 x)^2 outside {1, x, x^-1, x^2}; misses at most
    7 sqrt(n cl(G)) elements."""
    if x == 0:
        raise ValueError("x must not be the identity")
    sq = g.squares()
    xi = g.inv(x)
    bad = {0, x, xi, int(sq[x])}
    yix = g.mul_many(g.inv_all(), np.full(g.order, x))
    out = [y for y in range(g.order)
           if int(sq[y]) not in bad and int(sq[yix[y]]) not in bad]
    n = g.order
    cl_g = g.conjugacy().num_classes
    assert len(out) >= n - 7 * (n * cl_g) ** 0.5
    return out


@dataclass(frozen=True)
class ISet:
    """Greedy maximal subset of S(x) thinned so the witness events of distinct
    members overlap in at most one inverse-pair class."""

    x: int
    members: tuple[int, ...]
    s_size: int
    centralizing_in_s: int
    inverting_in_s: int
    x_is_involution: bool

    @property
    def size(self) -> int:
        return len(self.members)

    def lower_bounds(self) -> dict[str, int]:
        """Finite-size floors on |I| implied by the exclusion conditions: each
        member can exclude one partner per applicable condition."""
        s, c, v = self.s_size, self.centralizing_in_s, self.inverting_in_s
        if self.x_is_involution:
            return {"quarter": (s + 3) // 4, "half-minus-central": s // 2 - c}
        return {"half": (s + 1) // 2, "minus-pairs": s - c // 2 - v // 2}

    def bounds_ok(self) -> bool:
        return all(self.size >= b for b in self.lower_bounds().values())


def build_I_set(g: GroupTable, x: int) -> ISet:
    """Greedy (ascending element index) maximal subset of S(x) such that:
    if x^2 = 1, i in I excludes ix; if i centralizes x, i excludes xi^-1;
    if i conjugates x to x^-1, i excludes i^-1."""
    if x == 0:
        raise ValueError("x must not be the identity")
    s_list = build_S_set(g, x)
    xi = g.inv(x)
    x_inv = g.mul(x, x) == 0
    members: list[int] = []
    in_i: set[int] = set()
    n_central = n_invert = 0
    for i in s_list:
        ii = g.inv(i)
        conj = g.mul(g.mul(ii, x), i)
        centralizes = conj == x
        inverts = conj == xi
        n_central += centralizes
        n_invert += inverts
        partners = []
        if x_inv:
            partners.append(g.mul(i, x))
        if centralizes:
            partners.append(g.mul(x, ii))
        if inverts:
            partners.append(ii)
        if any(j in in_i for j in partners):
            continue
        members.append(i)
        in_i.add(i)
    return ISet(x=x, members=tuple(members), s_size=len(s_list),
                centralizing_in_s=n_central, inverting_in_s=n_invert,
                x_is_involution=x_inv)


def check_I_conditions(g: GroupTable, x: int, iset: ISet | None = None) -> list[tuple[int, int, str]]:
    """Exhaustively re-check the pairwise exclusion conditions on a built I;
    returns violating (i, j, condition) triples (expected none)."""
    if iset is None:
        iset = build_I_set(g, x)
    in_i = set(iset.members)
    xi = g.inv(x)
    bad = []
    for i in iset.members:
        ii = g.inv(i)
        conj = g.mul(g.mul(ii, x), i)
        if iset.x_is_involution and g.mul(i, x) in in_i and g.mul(i, x) != i:
            bad.append((i, g.mul(i, x), "ix"))
        if conj == x and g.mul(x, ii) in in_i and g.mul(x, ii) != i:
            bad.append((i, g.mul(x, ii), "xi^-1"))
        if conj == xi and ii in in_i and ii != i:
            bad.append((i, ii, "i^-1"))
    return bad


# -- witness-set union size --------------------------------------------------------


@dataclass(frozen=True)
class UnionSizeReport:
    """Per-pair check that overlapping witness sets F_i = {[i], [x i^-1]} of
    distinct members of I always union to exactly three classes, and that
    overlap happens only at the six candidate translates."""

    x: int
    i_size: int
    pairs_checked: int
    case_counts: dict[str, int]
    violations: tuple[tuple[int, int, str], ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_union_size_3(g: GroupTable, x: int, iset: ISet | None = None,
                        ecl: EquivClassIndex | None = None) -> UnionSizeReport:
    if x == 0:
        raise ValueError("x must not be the identity")
    if iset is None:
        iset = build_I_set(g, x)
    if ecl is None:
        ecl = build_equiv_classes(g)
    cls = ecl.class_of
    xi = g.inv(x)
    members = iset.members
    in_i = set(members)

    def f_set(i: int) -> frozenset[int]:
        return frozenset((int(cls[i]), int(cls[g.mul(x, g.inv(i))])))

    fs = {i: f_set(i) for i in members}
    case_counts = {c: 0 for c in "abcdef"}
    violations: list[tuple[int, int, str]] = []
    pairs = 0

    def candidates(i: int) -> list[tuple[str, int]]:
        ii = g.inv(i)
        return [("a", ii), ("b", g.mul(x, ii)), ("c", g.mul(i, xi)),
                ("d", g.mul(ii, x)), ("e", g.mul(i, x)),
                ("f", g.mul(g.mul(x, ii), x))]

    cand_sets = {i: candidates(i) for i in members}
    for i in members:
        for case, j in cand_sets[i]:
            if j == i or j not in in_i:
                continue
            if fs[i].isdisjoint(fs[j]):
                continue
            pairs += 1
            case_counts[case] += 1
            if len(fs[i] | fs[j]) != 3:
                violations.append((i, j, f"case {case}: union size {len(fs[i] | fs[j])}"))
    # the "only if" direction: overlap implies candidate-list membership
    cand_elems = {i: {j for _, j in cand_sets[i]} for i in members}
    for a_idx, i in enumerate(members):
        for j in members[a_idx + 1:]:
            if fs[i].isdisjoint(fs[j]):
                continue
            if j not in cand_elems[i]:
                violations.append((i, j, "overlap outside candidate list"))
    return UnionSizeReport(x=x, i_size=len(members), pairs_checked=pairs,
                           case_counts=case_counts, violations=tuple(violations))


def check_witness_identities(g: GroupTable, x: int) -> list[tuple[int, str]]:
    """The three F-identities behind the exclusion conditions, checked for
    every element i:  x^2 = 1 implies F_i = F_{ix};  i centralizing x implies
    F_i = F_{x i^-1};  i conjugating x to x^-1 implies F_i = F_{i^-1}."""
    ecl = build_equiv_classes(g)
    cls = ecl.class_of
    xi = g.inv(x)
    x_inv = g.mul(x, x) == 0

    def f_set(i: int) -> frozenset[int]:
        return frozenset((int(cls[i]), int(cls[g.mul(x, g.inv(i))])))

    bad = []
    for i in range(g.order):
        ii = g.inv(i)
        conj = g.mul(g.mul(ii, x), i)
        if x_inv and f_set(i) != f_set(g.mul(i, x)):
            bad.append((i, "F_i != F_{ix} with x^2 = 1"))
        if conj == x and f_set(i) != f_set(g.mul(x, ii)):
            bad.append((i, "F_i != F_{xi^-1} with i central"))
        if conj == xi and f_set(i) != f_set(ii):
            bad.append((i, "F_i != F_{i^-1} with i inverting"))
    return bad


# -- Latin square variants ----------------------------------------------------------


def build_latin_gamma_x(l: LatinSquare, x: int) -> GammaX:
    """Gamma_x for a Latin square graph anchored at vertex 0: symbols a and b
    are adjacent when some vertex y has a in {L[0,y], L[y,0]} and b in
    {L[x,y], L[y,x]} (either orientation)."""
    n = l.order
    if not 0 < x < n:
        raise ValueError("x must be a non-anchor vertex index")
    ent = l.entries
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for y in range(n):
        for a in {int(ent[0, y]), int(ent[y, 0])}:
            for b in {int(ent[x, y]), int(ent[y, x])}:
                nbrs[a].add(b)
                nbrs[b].add(a)
    gx = GammaX(order=n, x=x, neighbors=tuple(tuple(sorted(s)) for s in nbrs))
    degs = gx.degrees()
    assert min(degs) >= 1 and max(degs) <= 8
    return gx


def latin_gamma_membership_count(l: LatinSquare, pair: tuple[int, int]) -> int:
    """Number of x for which the symbol pair is adjacent in the Latin Gamma_x."""
    a, b = pair
    count = 0
    for x in range(1, l.order):
        if b in build_latin_gamma_x(l, x).neighbors[a]:
            count += 1
    assert count <= 8
    return count


def latin_dependency_degree(l: LatinSquare, pair: tuple[int, int]) -> int:
    """Maximum degree of the dependency graph on vertices outside the pair,
    joining z ~ w when their four witness symbols intersect; at most 12."""
    x, y = pair
    if x == y:
        raise ValueError("pair vertices must be distinct")
    ent = l.entries
    n = l.order
    verts = [z for z in range(n) if z not in (x, y)]
    wit = {z: {int(ent[x, z]), int(ent[z, x]), int(ent[y, z]), int(ent[z, y])}
           for z in verts}
    best = 0
    for z in verts:
        deg = sum(1 for w in verts if w != z and not wit[z].isdisjoint(wit[w]))
        best = max(best, deg)
    assert best <= 12
    return best
