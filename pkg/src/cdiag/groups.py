"""Exact finite-group bookkeeping.

Symbolic group expressions (symmetric, general linear, products, wreath
products) with exact arbitrary-precision orders, concrete Cayley tables
with fully checked group axioms, breadth-first closure of generator sets,
and small-group isomorphism testing by backtracking over generator images.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from math import factorial
from typing import Callable, Optional

import numpy as np

from . import modp

DEFAULT_TABLE_LIMIT = 20000
DEFAULT_ISO_LIMIT = 512

# Tables above this size skip Light's associativity test; they only arise
# from closure inside an already-associative ambient composition.
_ASSOC_CHECK_LIMIT = 4096


class GroupError(Exception):
    pass


class ClosureLimitExceeded(GroupError):
    def __init__(self, limit, reached):
        super().__init__(f"closure exceeded limit {limit} (reached {reached} elements)")
        self.limit = limit
        self.reached = reached


# ---------------------------------------------------------------------------
# Cayley tables


class CayleyTable:
    """A finite group as an n x n multiplication table over element indices.

    Group axioms are checked on construction: closure and identity/inverses
    always, associativity via Light's test on a greedy generating set (full
    proof of associativity, not a sample) for orders up to
    ``_ASSOC_CHECK_LIMIT``.
    """

    def __init__(self, table, identity: Optional[int] = None, label: str = "",
                 check: bool = True):
        t = np.asarray(table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1]:
            raise GroupError("table must be square")
        self.n = int(t.shape[0])
        if self.n == 0:
            raise GroupError("empty table")
        if t.min() < 0 or t.max() >= self.n:
            raise GroupError("table entries out of range (not closed)")
        self.table = t
        self.label = label
        if identity is None:
            identity = self._find_identity()
            if identity is None:
                raise GroupError("no identity element")
        self.identity = int(identity)
        self._orders = None
        if check:
            self._check_axioms()

    def _find_identity(self):
        rng = np.arange(self.n)
        for e in range(self.n):
            if np.array_equal(self.table[e], rng) and np.array_equal(self.table[:, e], rng):
                return e
        return None

    def _check_axioms(self):
        rng = np.arange(self.n)
        e = self.identity
        if not (np.array_equal(self.table[e], rng) and np.array_equal(self.table[:, e], rng)):
            raise GroupError("identity law fails")
        # inverses: identity appears in every row
        if not np.all((self.table == e).any(axis=1)):
            raise GroupError("missing inverse")
        if self.n <= _ASSOC_CHECK_LIMIT:
            for g in self._generating_set():
                left = self.table[:, self.table[g]]       # x*(g*y)
                right = self.table[self.table[:, g]]      # (x*g)*y
                if not np.array_equal(left, right):
                    raise GroupError(f"associativity fails at generator {g}")

    def mul(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def inv(self, i: int) -> int:
        return int(np.nonzero(self.table[i] == self.identity)[0][0])

    def element_order(self, i: int) -> int:
        k, x = 1, i
        while x != self.identity:
            x = self.mul(x, i)
            k += 1
        return k

    def element_order_histogram(self) -> Counter:
        if self._orders is None:
            self._orders = Counter(self.element_order(i) for i in range(self.n))
        return self._orders

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def _close_indices(self, seed: set) -> set:
        els = set(seed)
        els.add(self.identity)
        bdy = list(els)
        gens = list(seed)
        while bdy:
            new = []
            for g in gens:
                for x in bdy:
                    y = int(self.table[x, g])
                    if y not in els:
                        els.add(y)
                        new.append(y)
            bdy = new
        return els

    def _generating_set(self) -> list:
        gens, els = [], {self.identity}
        for i in range(self.n):
            if i not in els:
                gens.append(i)
                els = self._close_indices(set(gens))
        return gens

    def generating_sequence(self):
        """Greedy generators ordered by decreasing element order, with the
        subgroup size after each addition."""
        order_of = [self.element_order(i) for i in range(self.n)]
        by_pref = sorted(range(self.n), key=lambda i: (-order_of[i], i))
        gens, sizes, els = [], [], {self.identity}
        for i in by_pref:
            if i not in els:
                gens.append(i)
                els = self._close_indices(set(gens))
                sizes.append(len(els))
                if len(els) == self.n:
                    break
        return gens, sizes

    def __repr__(self):
        lbl = f" {self.label}" if self.label else ""
        return f"CayleyTable(order={self.n}{lbl})"


def cyclic_table(n: int, label: str = "") -> CayleyTable:
    t = [[(i + j) % n for j in range(n)] for i in range(n)]
    return CayleyTable(t, identity=0, label=label or f"C{n}")


def product_table(tables: list, label: str = "") -> CayleyTable:
    """Direct product of concrete tables, elements ordered lexicographically."""
    if not tables:
        return cyclic_table(1, label=label or "1")
    shape = [t.n for t in tables]
    els = list(itertools.product(*(range(n) for n in shape)))
    idx = {e: i for i, e in enumerate(els)}
    table = [
        [idx[tuple(t.mul(a[k], b[k]) for k, t in enumerate(tables))] for b in els]
        for a in els
    ]
    e = idx[tuple(t.identity for t in tables)]
    return CayleyTable(table, identity=e, label=label)


# ---------------------------------------------------------------------------
# Generator sets and closure


@dataclass
class GeneratorSet:
    """Generators inside an ambient composition (typically a product of
    automorphism groups of category objects, elements being tuples of
    morphism indices)."""

    compose: Callable
    identity: object
    generators: list
    describe: str = ""
    known_order: Optional[int] = None

    def close(self, limit: int = DEFAULT_TABLE_LIMIT) -> list:
        return close_elements(self.generators, self.compose, self.identity, limit)


def close_elements(generators, compose, identity, limit: int = DEFAULT_TABLE_LIMIT) -> list:
    """Breadth-first closure of ``generators`` under ``compose``.

    Deterministic: the identity comes first, then elements in discovery
    order.  Raises ClosureLimitExceeded past ``limit``.
    """
    els = [identity]
    seen = {identity}
    gens = []
    for g in generators:
        if g not in seen:
            seen.add(g)
            els.append(g)
        if g not in gens:
            gens.append(g)
    bdy = list(els)
    while bdy:
        new = []
        for g in gens:
            for x in bdy:
                y = compose(x, g)
                if y not in seen:
                    seen.add(y)
                    els.append(y)
                    new.append(y)
                    if len(els) > limit:
                        raise ClosureLimitExceeded(limit, len(els))
        bdy = new
    return els


def closure(genset: GeneratorSet, table_limit: int = DEFAULT_TABLE_LIMIT) -> CayleyTable:
    """Materialize the group generated by ``genset`` as a Cayley table."""
    els = genset.close(table_limit)
    return table_from_elements(els, genset.compose, label=genset.describe)


def table_from_elements(els: list, compose, label: str = "") -> CayleyTable:
    idx = {e: i for i, e in enumerate(els)}
    n = len(els)
    table = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(els):
        row = table[i]
        for j, b in enumerate(els):
            row[j] = idx[compose(a, b)]
    return CayleyTable(table, label=label)


# ---------------------------------------------------------------------------
# Symbolic group expressions


class GroupExpr:
    """Base class of the symbolic expression tree."""

    def order(self) -> int:
        raise NotImplementedError

    def text(self) -> str:
        raise NotImplementedError

    def _needs_parens(self) -> bool:
        return False

    def __repr__(self):
        return f"<{type(self).__name__} {self.text()}>"

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash((type(self).__name__, self._key()))

    def _key(self):
        return ()


class Trivial(GroupExpr):
    def order(self):
        return 1

    def text(self):
        return "1"


class Symmetric(GroupExpr):
    def __init__(self, n: int):
        assert n >= 0
        self.n = n

    def order(self):
        return factorial(self.n)

    def text(self):
        return f"S{self.n}"

    def _key(self):
        return (self.n,)


class GeneralLinear(GroupExpr):
    def __init__(self, n: int, q: int):
        assert n >= 1
        if not modp.is_prime(q):
            raise GroupError(f"q={q} is not prime")
        self.n, self.q = n, q

    def order(self):
        qn = self.q ** self.n
        out = 1
        for i in range(self.n):
            out *= qn - self.q ** i
        return out

    def text(self):
        return f"GL({self.n},{self.q})"

    def _key(self):
        return (self.n, self.q)


class FieldUnits(GroupExpr):
    """Multiplicative group of F_q; same group as GL(1, q)."""

    def __init__(self, q: int):
        if not modp.is_prime(q):
            raise GroupError(f"q={q} is not prime")
        self.q = q

    def order(self):
        return self.q - 1

    def text(self):
        return f"U({self.q})"

    def _key(self):
        return (self.q,)


class FieldAdditive(GroupExpr):
    def __init__(self, q: int):
        if not modp.is_prime(q):
            raise GroupError(f"q={q} is not prime")
        self.q = q

    def order(self):
        return self.q

    def text(self):
        return f"A({self.q})"

    def _key(self):
        return (self.q,)


class Product(GroupExpr):
    def __init__(self, factors):
        self.factors = tuple(factors)

    def order(self):
        out = 1
        for f in self.factors:
            out *= f.order()
        return out

    def text(self):
        if not self.factors:
            return "1"
        parts = []
        for f in self.factors:
            t = f.text()
            parts.append(f"({t})" if f._needs_parens() else t)
        return " x ".join(parts)

    def _needs_parens(self):
        return len(self.factors) > 1

    def _key(self):
        return self.factors


class Wreath(GroupExpr):
    """base wr S_k: the semidirect product base^k x| S_k with S_k
    permuting the k factors."""

    def __init__(self, base: GroupExpr, k: int):
        assert k >= 0
        self.base, self.k = base, k

    def order(self):
        return self.base.order() ** self.k * factorial(self.k)

    def text(self):
        b = self.base.text()
        if self.base._needs_parens():
            b = f"({b})"
        return f"{b} wr S{self.k}"

    def _needs_parens(self):
        return True

    def _key(self):
        return (self.base, self.k)


class Concrete(GroupExpr):
    def __init__(self, table: CayleyTable, label: str = ""):
        self.table = table
        self.label = label or table.label

    def order(self):
        return self.table.n

    def text(self):
        return self.label or f"table[{self.table.n}]"

    def _key(self):
        return (id(self.table),)


class PermSub(GroupExpr):
    """A subgroup given by a generator set inside an ambient composition."""

    def __init__(self, genset: GeneratorSet):
        self.genset = genset

    def order(self):
        if self.genset.known_order is not None:
            return self.genset.known_order
        return len(self.genset.close())

    def text(self):
        d = self.genset.describe
        return d or f"subgroup[{len(self.genset.generators)} gens]"

    def _key(self):
        return (id(self.genset),)


def order(expr: GroupExpr) -> int:
    return expr.order()


def expr_text(expr: GroupExpr) -> str:
    return expr.text()


# ---------------------------------------------------------------------------
# Materialization


def _carrier(expr: GroupExpr, table_limit: int):
    """(elements, mul, identity) for an expression; elements hashable and in
    deterministic order."""
    if isinstance(expr, Trivial):
        return [0], (lambda a, b: 0), 0
    if isinstance(expr, Symmetric):
        els = [tuple(p) for p in itertools.permutations(range(expr.n))]
        if not els:
            els = [()]
        return els, (lambda a, b: tuple(a[b[i]] for i in range(len(a)))), tuple(range(expr.n))
    if isinstance(expr, GeneralLinear):
        els = modp.general_linear(expr.n, expr.q)
        q = expr.q
        return els, (lambda a, b: modp.mul(a, b, q)), modp.identity(expr.n)
    if isinstance(expr, FieldUnits):
        q = expr.q
        return list(range(1, q)), (lambda a, b: a * b % q), 1
    if isinstance(expr, FieldAdditive):
        q = expr.q
        return list(range(q)), (lambda a, b: (a + b) % q), 0
    if isinstance(expr, Product):
        parts = [_carrier(f, table_limit) for f in expr.factors]
        els = [tuple(c) for c in itertools.product(*(p[0] for p in parts))]
        muls = [p[1] for p in parts]
        ident = tuple(p[2] for p in parts)

        def mul(a, b):
            return tuple(m(x, y) for m, x, y in zip(muls, a, b))

        return els, mul, ident
    if isinstance(expr, Wreath):
        bels, bmul, be = _carrier(expr.base, table_limit)
        k = expr.k
        perms = [tuple(p) for p in itertools.permutations(range(k))]
        if not perms:
            perms = [()]
        els = [(tuple(c), s) for c in itertools.product(bels, repeat=k) for s in perms]

        def mul(a, b):
            (f, sig), (g, tau) = a, b
            inv = [0] * k
            for i, v in enumerate(sig):
                inv[v] = i
            h = tuple(bmul(f[i], g[inv[i]]) for i in range(k))
            return (h, tuple(sig[tau[i]] for i in range(k)))

        return els, mul, ((be,) * k, tuple(range(k)))
    if isinstance(expr, Concrete):
        t = expr.table
        return list(range(t.n)), t.mul, t.identity
    if isinstance(expr, PermSub):
        els = expr.genset.close(table_limit)
        return els, expr.genset.compose, expr.genset.identity
    raise GroupError(f"cannot materialize {expr!r}")


def materialize(expr: GroupExpr, table_limit: int = DEFAULT_TABLE_LIMIT) -> CayleyTable:
    """Concrete Cayley table of a symbolic expression.

    Refuses expressions whose order exceeds ``table_limit``.
    """
    if not isinstance(expr, (Concrete, PermSub)):
        n = expr.order()
        if n > table_limit:
            raise ClosureLimitExceeded(table_limit, n)
    if isinstance(expr, Concrete):
        return expr.table
    els, mul, _ = _carrier(expr, table_limit)
    if len(els) > table_limit:
        raise ClosureLimitExceeded(table_limit, len(els))
    return table_from_elements(els, mul, label=expr.text())


# ---------------------------------------------------------------------------
# Isomorphism testing


def are_isomorphic(a: CayleyTable, b: CayleyTable,
                   iso_limit: int = DEFAULT_ISO_LIMIT) -> Optional[bool]:
    """True/False when decided; None when either order exceeds ``iso_limit``
    (undecided at the configured limit, deliberately distinct from False).
    """
    if a.n != b.n:
        return False
    if a.n > iso_limit or b.n > iso_limit:
        return None
    if a.n == 1:
        return True
    if a.is_abelian() != b.is_abelian():
        return False
    if a.element_order_histogram() != b.element_order_histogram():
        return False

    gens, sizes = a.generating_sequence()
    orders_b = [b.element_order(i) for i in range(b.n)]

    def extend(images):
        """Grow the partial hom gens[:len(images)] -> images over the
        generated subgroup; None on any inconsistency."""
        amap = {a.identity: b.identity}
        frontier = [a.identity]
        pairs = list(zip(gens[: len(images)], images))
        for g, h in pairs:
            if g in amap:
                if amap[g] != h:
                    return None
            else:
                amap[g] = h
                frontier.append(g)
        while frontier:
            new = []
            for g, h in pairs:
                for x in list(frontier):
                    y = a.mul(x, g)
                    fy = b.mul(amap[x], h)
                    if y in amap:
                        if amap[y] != fy:
                            return None
                    else:
                        amap[y] = fy
                        new.append(y)
            frontier = new
        if len(set(amap.values())) != len(amap):
            return None
        return amap

    def backtrack(i, images):
        if i == len(gens):
            amap = extend(images)
            return amap is not None and len(amap) == a.n
        want = a.element_order(gens[i])
        for h in range(b.n):
            if orders_b[h] != want:
                continue
            amap = extend(images + [h])
            if amap is None or len(amap) != sizes[i]:
                continue
            if backtrack(i + 1, images + [h]):
                return True
        return False

    return backtrack(0, [])


# ---------------------------------------------------------------------------
# Named small-group library (trivial, cyclic <= 12, S_k for k <= 6, products)


_N_CYCLIC_ATOMS = 11
_ATOMS = [(f"C{k}", k, lambda k=k: cyclic_table(k)) for k in range(2, 13)]
_ATOMS += [(f"S{k}", factorial(k), lambda k=k: materialize(Symmetric(k)))
           for k in range(3, 7)]
_atom_cache: dict = {}
_atom_hist_cache: dict = {}


def _atom_table(i: int) -> CayleyTable:
    if i not in _atom_cache:
        _atom_cache[i] = _ATOMS[i][2]()
    return _atom_cache[i]


def _atom_histogram(i: int) -> Counter:
    if i not in _atom_hist_cache:
        _atom_hist_cache[i] = _atom_table(i).element_order_histogram()
    return _atom_hist_cache[i]


def _sequence_histogram(seq) -> Counter:
    """Element-order histogram of a product of atoms, by lcm convolution."""
    from math import lcm
    hist = Counter({1: 1})
    for i in seq:
        nxt = Counter()
        for o1, m1 in hist.items():
            for o2, m2 in _atom_histogram(i).items():
                nxt[lcm(o1, o2)] += m1 * m2
        hist = nxt
    return hist


def _candidate_sequences(n: int) -> list:
    seqs = []

    def rec(start, remaining, chosen):
        if remaining == 1:
            if chosen:
                seqs.append(tuple(chosen))
            return
        for i in range(start, len(_ATOMS)):
            o = _ATOMS[i][1]
            if o <= remaining and remaining % o == 0:
                rec(i, remaining // o, chosen + [i])

    rec(0, n, [])
    return sorted(seqs, key=lambda s: (len(s), s))


def named_candidates(n: int):
    """(label, CayleyTable) pairs of library groups of order ``n``, single
    atoms before longer products, deterministic order."""
    if n == 1:
        yield "1", cyclic_table(1)
        return
    for seq in _candidate_sequences(n):
        label = " x ".join(_ATOMS[i][0] for i in seq)
        tables = [_atom_table(i) for i in seq]
        if len(tables) == 1:
            yield label, tables[0]
        else:
            yield label, product_table(tables, label=label)


def match_named(table: CayleyTable, iso_limit: int = DEFAULT_ISO_LIMIT) -> Optional[str]:
    """Label of the first library group isomorphic to ``table``, or None.

    Candidates are prefiltered on abelianness and the element-order
    histogram (both computable from atom data without building the product
    table), so only plausible products are materialized.
    """
    if table.n > iso_limit:
        return None
    if table.n == 1:
        return "1"
    abelian = table.is_abelian()
    hist = table.element_order_histogram()
    for seq in _candidate_sequences(table.n):
        if all(i < _N_CYCLIC_ATOMS for i in seq) != abelian:
            continue
        if _sequence_histogram(seq) != hist:
            continue
        label = " x ".join(_ATOMS[i][0] for i in seq)
        tables = [_atom_table(i) for i in seq]
        cand = tables[0] if len(tables) == 1 else product_table(tables, label=label)
        if are_isomorphic(table, cand, iso_limit):
            return label
    return None
