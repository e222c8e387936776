"""Finite groups as indexed element sets with exact table or permutation arithmetic.

Elements of a group of order n are the indices 0..n-1 with the identity always
at index 0.  Small groups (n <= 10000) are backed by a dense multiplication
table; larger symmetric groups are backed by permutation words composed on the
fly, with elements indexed in lexicographic order of their one-line notation.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass

import numpy as np

DENSE_LIMIT = 10_000
ASSOC_EXHAUSTIVE_LIMIT = 256
ASSOC_SAMPLE_TRIPLES = 1_000_000
ASSOC_SAMPLE_SEED = 0


class GroupValidationError(ValueError):
    """A multiplication table violates a group axiom (message names it)."""


def _perm_key_powers(m: int) -> np.ndarray:
    return (m ** np.arange(m - 1, -1, -1)).astype(np.int64)


def _enumerate_perms(m: int) -> np.ndarray:
    """All permutations of 0..m-1 in lexicographic order, identity first."""
    n = math.factorial(m)
    out = np.empty((n, m), dtype=np.uint8)
    for i, p in enumerate(itertools.permutations(range(m))):
        out[i] = p
    return out


class GroupTable:
    """A finite group on indices 0..order-1 with identity at 0.

    ``backing`` is "dense" (explicit n x n table) or "perm" (permutation
    words).  Instances are immutable after construction and safe to share
    across threads.
    """

    def __init__(self, *, spec: str, table: np.ndarray | None = None,
                 perm_degree: int | None = None, labels: list[str] | None = None,
                 validate: bool = True):
        self.spec = spec
        self.labels = labels
        if table is not None:
            self.backing = "dense"
            table = np.ascontiguousarray(table, dtype=np.uint16)
            if validate:
                _validate_dense_table(table)
            self._table = table
            self._table.setflags(write=False)
            self.order = int(table.shape[0])
            self._inv = np.argmin(table, axis=1).astype(np.int64)
            # argmin finds the first 0 in each row, i.e. the right inverse
            self._inv.setflags(write=False)
        elif perm_degree is not None:
            self.backing = "perm"
            m = perm_degree
            self._m = m
            self._elems = _enumerate_perms(m)
            self._powers = _perm_key_powers(m)
            self._keys = self._elems.astype(np.int64) @ self._powers
            self.order = int(self._elems.shape[0])
            self._inv_cache: np.ndarray | None = None
        else:
            raise ValueError("need a table or a permutation degree")
        self._conjugacy: ConjugacyData | None = None
        self._squares: np.ndarray | None = None

    # -- scalar ops ---------------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        if self.backing == "dense":
            return int(self._table[a, b])
        return int(self._rank_rows(self._compose_rows(self._elems[[a]], self._elems[[b]]))[0])

    def inv(self, a: int) -> int:
        if self.backing == "dense":
            return int(self._inv[a])
        return int(self._rank_rows(np.argsort(self._elems[[a]], axis=1))[0])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv(a), -k)
        out = 0
        base = a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.mul(x, a)
            k += 1
        return k

    # -- vectorised ops ------------------------------------------------------

    def mul_many(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Elementwise products of broadcast index arrays."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.backing == "dense":
            return self._table[a, b].astype(np.int64)
        a, b = np.broadcast_arrays(a, b)
        shape = a.shape
        rows = self._compose_rows(self._elems[a.ravel()], self._elems[b.ravel()])
        return self._rank_rows(rows).reshape(shape)

    def inv_many(self, a: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.backing == "dense":
            return self._inv[a]
        shape = a.shape
        rows = np.argsort(self._elems[a.ravel()], axis=1)
        return self._rank_rows(rows).reshape(shape)

    def inv_all(self) -> np.ndarray:
        """inv(x) for every x, cached for perm backing."""
        if self.backing == "dense":
            return self._inv
        if self._inv_cache is None:
            self._inv_cache = self._rank_rows(np.argsort(self._elems, axis=1))
            self._inv_cache.setflags(write=False)
        return self._inv_cache

    def squares(self) -> np.ndarray:
        """x*x for every x, cached."""
        if self._squares is None:
            if self.backing == "dense":
                n = self.order
                sq = self._table[np.arange(n), np.arange(n)].astype(np.int64)
            else:
                rows = np.take_along_axis(self._elems, self._elems, axis=1)
                sq = self._rank_rows(rows)
            sq.setflags(write=False)
            self._squares = sq
        return self._squares

    def _compose_rows(self, pa: np.ndarray, pb: np.ndarray) -> np.ndarray:
        # (pa . pb)(i) = pa[pb[i]]
        return np.take_along_axis(pa, pb, axis=1)

    def _rank_rows(self, rows: np.ndarray) -> np.ndarray:
        keys = rows.astype(np.int64) @ self._powers
        return np.searchsorted(self._keys, keys).astype(np.int64)

    # -- structure -----------------------------------------------------------

    @functools.cached_property
    def is_abelian(self) -> bool:
        if self.backing == "dense":
            return bool((self._table == self._table.T).all())
        return self._m <= 2

    def conjugacy(self) -> "ConjugacyData":
        if self._conjugacy is None:
            if self.is_abelian:
                self._conjugacy = ConjugacyData(
                    class_of=np.arange(self.order, dtype=np.int64),
                    class_sizes=np.ones(self.order, dtype=np.int64),
                )
            elif self.backing == "dense":
                self._conjugacy = _conjugacy_dense(self)
            else:
                self._conjugacy = _conjugacy_perm(self)
        return self._conjugacy

    def __repr__(self) -> str:
        return f"GroupTable({self.spec!r}, order={self.order}, backing={self.backing!r})"


@dataclass(frozen=True)
class ConjugacyData:
    """class_of maps element -> class id; class_sizes is indexed by class id."""

    class_of: np.ndarray
    class_sizes: np.ndarray

    @property
    def num_classes(self) -> int:
        return int(self.class_sizes.shape[0])

    def cl(self, x: int) -> int:
        return int(self.class_sizes[self.class_of[x]])

    def __post_init__(self):
        assert int(self.class_sizes.sum()) == self.class_of.shape[0]
        assert self.class_of[0] == 0 and self.class_sizes[0] == 1


def _conjugacy_dense(g: GroupTable) -> ConjugacyData:
    n = g.order
    tab = g._table
    inv = g._inv
    idx = np.arange(n)
    class_of = np.full(n, -1, dtype=np.int64)
    sizes: list[int] = []
    for x in range(n):
        if class_of[x] >= 0:
            continue
        # z^-1 x z over all z, fully vectorised
        conj = tab[tab[inv, x], idx]
        members = np.unique(conj)
        class_of[members] = len(sizes)
        sizes.append(len(members))
    return ConjugacyData(class_of=class_of, class_sizes=np.array(sizes, dtype=np.int64))


def _conjugacy_perm(g: GroupTable) -> ConjugacyData:
    """Orbit closure under conjugation by a transposition and an m-cycle."""
    m = g._m
    gens = []
    t = np.arange(m); t[0], t[1] = 1, 0
    c = np.roll(np.arange(m), -1)
    for p in (t, c):
        pinv = np.argsort(p)
        gens.append((p, pinv))
    n = g.order
    class_of = np.full(n, -1, dtype=np.int64)
    sizes: list[int] = []
    for rep in range(n):
        if class_of[rep] >= 0:
            continue
        cid = len(sizes)
        class_of[rep] = cid
        frontier = np.array([rep], dtype=np.int64)
        count = 1
        while frontier.size:
            rows = g._elems[frontier]
            nxt = []
            for p, pinv in gens:
                conj = pinv[rows[:, p]]          # (g^-1 . y . g) rows
                ids = g._rank_rows(conj)
                fresh = ids[class_of[ids] < 0]
                if fresh.size:
                    fresh = np.unique(fresh)
                    fresh = fresh[class_of[fresh] < 0]
                    class_of[fresh] = cid
                    nxt.append(fresh)
            if nxt:
                frontier = np.concatenate(nxt)
                count += frontier.size
            else:
                frontier = np.empty(0, dtype=np.int64)
        sizes.append(count)
    return ConjugacyData(class_of=class_of, class_sizes=np.array(sizes, dtype=np.int64))


# -- validation ---------------------------------------------------------------


def _validate_dense_table(table: np.ndarray) -> None:
    if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
        raise GroupValidationError("table must be a non-empty square matrix")
    n = table.shape[0]
    if n > DENSE_LIMIT:
        raise GroupValidationError(f"dense tables are limited to order {DENSE_LIMIT}")
    idx = np.arange(n)
    if not ((np.sort(table, axis=1) == idx).all()):
        bad = int(np.flatnonzero(~(np.sort(table, axis=1) == idx).all(axis=1))[0])
        raise GroupValidationError(f"non-Latin row: row {bad} is not a permutation of 0..{n - 1}")
    if not ((np.sort(table, axis=0) == idx[:, None]).all()):
        bad = int(np.flatnonzero(~(np.sort(table, axis=0) == idx[:, None]).all(axis=0))[0])
        raise GroupValidationError(f"non-Latin column: column {bad} is not a permutation of 0..{n - 1}")
    is_id = (table == idx).all(axis=1) & (table.T == idx).all(axis=1)
    ids = np.flatnonzero(is_id)
    if ids.size == 0:
        raise GroupValidationError("no identity: no element e with e*x = x*e = x for all x")
    if ids[0] != 0:
        raise GroupValidationError(f"identity must be element 0, found at index {int(ids[0])}")
    if n <= ASSOC_EXHAUSTIVE_LIMIT:
        left = table[table]                # left[a,b,c] = (a*b)*c
        right = table[:, table]            # right[a,b,c] = a*(b*c)
        if not (left == right).all():
            a, b, c = (int(v[0]) for v in np.nonzero(left != right))
            raise GroupValidationError(f"broken associativity: ({a}*{b})*{c} != {a}*({b}*{c})")
    else:
        rng = np.random.Generator(np.random.Philox(ASSOC_SAMPLE_SEED))
        abc = rng.integers(0, n, size=(3, ASSOC_SAMPLE_TRIPLES))
        a, b, c = abc
        bad = table[table[a, b], c] != table[a, table[b, c]]
        if bad.any():
            i = int(np.flatnonzero(bad)[0])
            raise GroupValidationError(
                f"broken associativity: ({int(a[i])}*{int(b[i])})*{int(c[i])} != "
                f"{int(a[i])}*({int(b[i])}*{int(c[i])})")
    # Latin + identity + associativity imply two-sided inverses; locate and check
    inv = np.argmin(table, axis=1)
    if not (table[inv, idx] == 0).all():
        bad = int(np.flatnonzero(table[inv, idx] != 0)[0])
        raise GroupValidationError(f"no inverse: element {bad} has no two-sided inverse")


# -- family constructors -------------------------------------------------------


def _cyclic_table(n: int) -> np.ndarray:
    idx = np.arange(n)
    return np.mod(np.add.outer(idx, idx), n).astype(np.uint16)


def _elem_abelian_2_table(k: int) -> np.ndarray:
    idx = np.arange(1 << k)
    return np.bitwise_xor.outer(idx, idx).astype(np.uint16)


def _dihedral_table(m: int) -> np.ndarray:
    n = 2 * m
    idx = np.arange(n)
    ar, asg = (idx % m)[:, None], (idx // m)[:, None]
    br, bsg = (idx % m)[None, :], (idx // m)[None, :]
    r = np.mod(br + np.where(bsg == 1, -ar, ar), m)
    return ((asg ^ bsg) * m + r).astype(np.uint16)


def _symmetric_table(m: int) -> np.ndarray:
    elems = _enumerate_perms(m)
    n = elems.shape[0]
    powers = _perm_key_powers(m)
    keys = elems.astype(np.int64) @ powers
    table = np.empty((n, n), dtype=np.uint16)
    for a in range(n):
        comp = elems[a][elems]             # (pa . pb)(i) = pa[pb[i]]
        table[a] = np.searchsorted(keys, comp.astype(np.int64) @ powers)
    return table


def _product_table(t1: np.ndarray, t2: np.ndarray) -> np.ndarray:
    n1, n2 = t1.shape[0], t2.shape[0]
    if n1 * n2 > DENSE_LIMIT:
        raise GroupValidationError(
            f"direct product of orders {n1} x {n2} exceeds the dense limit {DENSE_LIMIT}")
    block = np.kron(t1.astype(np.int64), np.ones((n2, n2), dtype=np.int64))
    return (block * n2 + np.tile(t2.astype(np.int64), (n1, n1))).astype(np.uint16)


@dataclass(frozen=True)
class FamilySpec:
    """Parsed family description: kind plus parameters."""

    kind: str
    param: int | None = None
    factors: tuple["FamilySpec", ...] = ()
    path: str | None = None

    def __str__(self) -> str:
        if self.kind == "prod":
            return "prod:" + ",".join(str(f) for f in self.factors)
        if self.kind == "file":
            return f"file:{self.path}"
        return f"{self.kind}:{self.param}"


def parse_family(spec: str) -> FamilySpec:
    """Parse "cyclic:5", "z2^:6", "dihedral:12", "sym:5", "prod:a:1,b:2", "file:PATH"."""
    spec = spec.strip()
    if spec.startswith("file:"):
        return FamilySpec(kind="file", path=spec[5:])
    if spec.startswith("prod:"):
        parts = spec[5:].split(",")
        if len(parts) < 2:
            raise ValueError(f"prod spec needs at least two factors: {spec!r}")
        factors = tuple(parse_family(p) for p in parts)
        for f in factors:
            if f.kind in ("prod", "file"):
                raise ValueError("prod factors must be simple family specs")
        return FamilySpec(kind="prod", factors=factors)
    try:
        kind, raw = spec.rsplit(":", 1)
        param = int(raw)
    except ValueError:
        raise ValueError(f"malformed family spec: {spec!r}") from None
    if kind not in ("cyclic", "z2^", "dihedral", "sym"):
        raise ValueError(f"unknown family kind: {kind!r}")
    if param < 1:
        raise ValueError(f"family parameter must be positive: {spec!r}")
    if kind == "sym" and param > 10:
        raise ValueError("symmetric groups are supported up to sym:10")
    if kind == "z2^" and (1 << param) > DENSE_LIMIT:
        raise ValueError(f"z2^:{param} exceeds the dense limit {DENSE_LIMIT}")
    if kind in ("cyclic", "dihedral"):
        order = param if kind == "cyclic" else 2 * param
        if order > DENSE_LIMIT:
            raise ValueError(f"{spec!r} exceeds the dense limit {DENSE_LIMIT}")
    return FamilySpec(kind=kind, param=param)


def _build_family(fs: FamilySpec) -> GroupTable:
    if fs.kind == "cyclic":
        return GroupTable(spec=str(fs), table=_cyclic_table(fs.param), validate=False)
    if fs.kind == "z2^":
        return GroupTable(spec=str(fs), table=_elem_abelian_2_table(fs.param), validate=False)
    if fs.kind == "dihedral":
        return GroupTable(spec=str(fs), table=_dihedral_table(fs.param), validate=False)
    if fs.kind == "sym":
        if math.factorial(fs.param) > DENSE_LIMIT:
            return GroupTable(spec=str(fs), perm_degree=fs.param)
        return GroupTable(spec=str(fs), table=_symmetric_table(fs.param), validate=False)
    if fs.kind == "prod":
        tables = []
        for f in fs.factors:
            sub = _build_family(f)
            if sub.backing != "dense":
                raise GroupValidationError("prod factors must be dense-backed")
            tables.append(sub._table)
        out = functools.reduce(_product_table, tables)
        return GroupTable(spec=str(fs), table=out, validate=False)
    if fs.kind == "file":
        return load_group_file(fs.path)
    raise ValueError(f"unknown family kind {fs.kind!r}")


@functools.lru_cache(maxsize=64)
def _build_cached(spec: str) -> GroupTable:
    return _build_family(parse_family(spec))


def build_group(spec: str | FamilySpec) -> GroupTable:
    """Build and validate a group from a family spec (string or parsed).

    Family tables are constructed, validated once, and cached; "file:" specs
    are re-read on every call.
    """
    fs = parse_family(spec) if isinstance(spec, str) else spec
    if fs.kind == "file":
        return _build_family(fs)
    g = _build_cached(str(fs))
    return g


def build_group_from_table(table, *, spec: str = "custom") -> GroupTable:
    """Wrap and validate an explicit multiplication table."""
    return GroupTable(spec=spec, table=np.asarray(table))


def load_group_file(path: str) -> GroupTable:
    """Load a group table file: first line n, then n rows of n 0-based indices."""
    with open(path) as fh:
        tokens = fh.read().split()
    if not tokens:
        raise GroupValidationError(f"{path}: empty table file")
    n = int(tokens[0])
    vals = tokens[1:]
    if len(vals) != n * n:
        raise GroupValidationError(f"{path}: expected {n * n} entries, found {len(vals)}")
    table = np.array(vals, dtype=np.int64).reshape(n, n)
    if table.min() < 0 or table.max() >= n:
        raise GroupValidationError(f"{path}: entries must lie in 0..{n - 1}")
    return GroupTable(spec=f"file:{path}", table=table)


def dump_group_file(g: GroupTable, path: str) -> None:
    if g.backing != "dense":
        raise ValueError("only dense-backed groups can be dumped as tables")
    with open(path, "w") as fh:
        fh.write(f"{g.order}\n")
        for row in g._table:
            fh.write(" ".join(str(int(v)) for v in row) + "\n")


# -- counting operations -------------------------------------------------------


def involution_count(g: GroupTable, *, include_identity: bool = False) -> int:
    """Number of x with x*x = identity, excluding the identity by default."""
    count = int((g.squares() == 0).sum())
    return count if include_identity else count - 1


@dataclass(frozen=True)
class InvolutionSeries:
    """Involution counts of the symmetric groups (identity included)."""

    values: tuple[int, ...]
    bound_holds: bool  # a_i <= 2^i sqrt(i!) for every i, checked exactly


def involution_series(m: int) -> InvolutionSeries:
    """a_1..a_m with a_n = a_{n-1} + (n-1) a_{n-2}, plus the 2^n sqrt(n!) bound check."""
    if not 1 <= m <= 20:
        raise ValueError("m must be in 1..20")
    vals = [1, 2]
    for n in range(3, m + 1):
        vals.append(vals[-1] + (n - 1) * vals[-2])
    vals = vals[:m]
    ok = all(a * a <= (4**i) * math.factorial(i) for i, a in enumerate(vals, start=1))
    return InvolutionSeries(values=tuple(vals), bound_holds=ok)


def square_root_count(g: GroupTable, x: int) -> int:
    """|{y : y*y = x}|."""
    return int((g.squares() == x).sum())


def centralizer_count(g: GroupTable, x: int) -> int:
    """|{y : y^-1 x y = x}|; equals order/cl(x) by orbit-stabiliser."""
    if g.backing == "dense":
        return int((g._table[x, :] == g._table[:, x]).sum())
    xy = g.mul_many(np.full(g.order, x), np.arange(g.order))
    yx = g.mul_many(np.arange(g.order), np.full(g.order, x))
    return int((xy == yx).sum())


def inverting_count(g: GroupTable, x: int) -> int:
    """|{y : y^-1 x y = x^-1}|; either 0 or order/cl(x)."""
    xinv = g.inv(x)
    if g.backing == "dense":
        idx = np.arange(g.order)
        conj = g._table[g._table[g._inv, x], idx]
        return int((conj == xinv).sum())
    xy = g.mul_many(np.full(g.order, x), np.arange(g.order))
    yxinv = g.mul_many(np.arange(g.order), np.full(g.order, xinv))
    return int((xy == yxinv).sum())


@dataclass(frozen=True)
class SmallClassReport:
    """Raw involution / small-class counts next to their reference magnitudes.

    Flags compare count <= reference without asserting anything asymptotic;
    families that are involution-rich (like elementary abelian 2-groups) are
    expected to overshoot."""

    eps: float
    involutions: int
    small_class_elements: int
    small_class_involutions: int
    ref_involutions: float      # n^{(1+eps)/2}
    ref_small_class: float      # n^{(1+eps)/2}
    ref_small_class_inv: float  # n^{(1+eps)/4}

    @property
    def flags(self) -> tuple[bool, bool, bool]:
        return (
            self.involutions <= self.ref_involutions,
            self.small_class_elements <= self.ref_small_class,
            self.small_class_involutions <= self.ref_small_class_inv,
        )


def check_small_class_hypotheses(g: GroupTable, eps: float) -> SmallClassReport:
    """Count involutions and small-conjugacy-class elements against n^((1+eps)/2)
    and n^((1+eps)/4) reference magnitudes.

    "Small class" means cl(x) <= 1/eps; the identity (cl = 1) always counts as a
    small-class element but never as an involution.
    """
    if not 0 < eps < 0.25:
        raise ValueError("eps must lie in (0, 1/4)")
    n = g.order
    conj = g.conjugacy()
    cl_of = conj.class_sizes[conj.class_of]
    sq = g.squares()
    invol = (sq == 0)
    invol[0] = False
    small = cl_of <= 1.0 / eps
    return SmallClassReport(
        eps=eps,
        involutions=int(invol.sum()),
        small_class_elements=int(small.sum()),
        small_class_involutions=int((invol & small).sum()),
        ref_involutions=n ** ((1 + eps) / 2),
        ref_small_class=n ** ((1 + eps) / 2),
        ref_small_class_inv=n ** ((1 + eps) / 4),
    )
