"""Enumeration and classification of characteristic attribute-set families.

For a binary context this module enumerates, over all subsets of the
attribute set:

* intents (closed sets, the fixed points of the double-prime closure),
* pseudo-intents and the canonical minimum-cardinality implication basis
  whose premises they are,
* minimal generators ("keys": no single-element removal preserves closure),
* minimum generators ("passkeys": cardinality-minimal keys of their closure
  class),
* proper premises (premises of the direct implication basis).

Two independent routes exist for every family: fast enumerations used by the
rest of the package, and literal definitional scans over the power set
(``brute_force_class``) used as oracles in the test suite.  All enumeration
output is returned in lectic order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .context import (
    AttrSet,
    CapacityError,
    FormalContext,
    POWERSET_SCAN_LIMIT,
    bit_reverse,
    closure,
    extent,
    iter_bits,
    iter_lectic_masks,
    lectic_sorted,
)


@dataclass(frozen=True)
class CharFlags:
    """Membership of one attribute subset in each characteristic family.

    ``is_generator`` is tautologically true: every subset generates the
    intent it closes to.
    """

    is_generator: bool = True
    is_intent: bool = False
    is_pseudo_intent: bool = False
    is_key: bool = False
    is_passkey: bool = False
    is_proper_premise: bool = False

    def __post_init__(self) -> None:
        if self.is_passkey and not self.is_key:
            raise ValueError("a passkey is always a key")
        if self.is_proper_premise and not self.is_key:
            raise ValueError("a proper premise is always a key")
        if self.is_intent and self.is_pseudo_intent:
            raise ValueError("a set cannot be both an intent and a pseudo-intent")


@dataclass(frozen=True)
class Implication:
    """``premise -> conclusion`` with the conclusion stored disjoint."""

    premise: AttrSet
    conclusion: AttrSet

    def __post_init__(self) -> None:
        if self.premise & self.conclusion:
            raise ValueError("premise and conclusion must be disjoint")


def enumerate_intents(ctx: FormalContext) -> list[AttrSet]:
    """All closed attribute sets, in lectic order.

    Every intent is the intersection of some subfamily of object rows (the
    empty subfamily giving the full attribute set), so one incremental pass
    over the rows collects exactly the closure fixed points.
    """
    family = {ctx.attribute_universe}
    for row in ctx.rows:
        family.update([f & row for f in family])
    return lectic_sorted(family, ctx.n_attrs)


def _canonical_basis_scan(ctx: FormalContext) -> list[tuple[AttrSet, AttrSet]]:
    """Lectic walk of the quasi-closed sets, collecting basis premises.

    The intents together with the premises of the minimum-cardinality
    implication basis form a closure system of their own.  Walking it in
    lectic order with the usual next-closed-set step needs only the premises
    found so far, because every premise properly contained in the current
    candidate is lectically smaller.  Returns ``(premise, premise_closure)``
    pairs in lectic order.
    """
    n = ctx.n_attrs
    full = ctx.attribute_universe
    found: list[tuple[int, int]] = []

    def preclose(x: int) -> int:
        # Smallest superset of x closed under every found premise that is a
        # proper subset of the running value.
        changed = True
        while changed:
            changed = False
            for p, c in found:
                if p & x == p and p != x and c | x != x:
                    x |= c
                    changed = True
        return x

    a = 0
    while True:
        ca = closure(ctx, a)
        if ca != a:
            found.append((a, ca))
        if a == full:
            break
        nxt = None
        work = a
        for i in range(n - 1, -1, -1):
            bit = 1 << i
            if work & bit:
                work ^= bit
            else:
                cand = preclose(work | bit)
                if not (cand & ~work) & (bit - 1):
                    nxt = cand
                    break
        if nxt is None:
            break
        a = nxt
    return found


def enumerate_pseudo_intents(ctx: FormalContext) -> list[AttrSet]:
    """The premises of the canonical implication basis, in lectic order."""
    return [p for p, _ in _canonical_basis_scan(ctx)]


def dg_basis(ctx: FormalContext) -> list[Implication]:
    """The minimum-cardinality implication basis of the context."""
    return [Implication(p, c & ~p) for p, c in _canonical_basis_scan(ctx)]


def implication_closure(b: AttrSet, basis: Iterable[Implication]) -> AttrSet:
    """Least superset of ``b`` that is a model of every implication."""
    rules = [(imp.premise, imp.conclusion) for imp in basis]
    x = b
    changed = True
    while changed:
        changed = False
        for p, c in rules:
            if p & x == p and c | x != x:
                x |= c
                changed = True
    return x


def is_proper_premise(ctx: FormalContext, attrs: AttrSet) -> bool:
    """True iff ``attrs`` closes to something no proper subset accounts for.

    The test is whether the union of ``attrs`` with the closures of its
    one-element-removed subsets falls short of the closure of ``attrs``.
    """
    u = attrs
    for j in iter_bits(attrs):
        u |= closure(ctx, attrs ^ (1 << j))
    return u != closure(ctx, attrs)


def enumerate_keys(ctx: FormalContext) -> list[AttrSet]:
    """All minimal generators, in lectic order.

    Levelwise search: a set can only be a key if every one-element-removed
    subset is a key (freeness is anti-monotone), so level ``k + 1``
    candidates are built from level-``k`` keys and rejected as soon as a
    single-element removal preserves the extent.
    """
    n = ctx.n_attrs
    cols = ctx.columns
    keys: list[int] = [0]
    prev: dict[int, int] = {0: ctx.object_universe}
    while prev:
        cur: dict[int, int] = {}
        for kmask, kext in prev.items():
            for m in range(kmask.bit_length(), n):
                cand = kmask | (1 << m)
                cext = kext & cols[m]
                if cext == kext:
                    continue
                good = True
                for j in iter_bits(kmask):
                    sub_ext = prev.get(cand ^ (1 << j))
                    if sub_ext is None or sub_ext == cext:
                        good = False
                        break
                if good:
                    cur[cand] = cext
        keys.extend(cur)
        prev = cur
    return lectic_sorted(keys, n)


def enumerate_passkeys(
    ctx: FormalContext, keys: list[AttrSet] | None = None
) -> list[AttrSet]:
    """Keys of minimum cardinality within their closure class, lectic order."""
    if keys is None:
        keys = enumerate_keys(ctx)
    closures = [closure(ctx, k) for k in keys]
    best: dict[int, int] = {}
    for k, c in zip(keys, closures):
        size = k.bit_count()
        if c not in best or size < best[c]:
            best[c] = size
    out = [k for k, c in zip(keys, closures) if k.bit_count() == best[c]]
    return lectic_sorted(out, ctx.n_attrs)


def enumerate_proper_premises(
    ctx: FormalContext, keys: list[AttrSet] | None = None
) -> list[AttrSet]:
    """All proper premises, in lectic order (every proper premise is a key)."""
    if keys is None:
        keys = enumerate_keys(ctx)
    return [k for k in keys if is_proper_premise(ctx, k)]


def min_key_sizes(
    ctx: FormalContext, keys: list[AttrSet] | None = None
) -> dict[AttrSet, int]:
    """Minimum key cardinality per intent, keyed by the intent mask."""
    if keys is None:
        keys = enumerate_keys(ctx)
    best: dict[int, int] = {}
    for k in keys:
        c = closure(ctx, k)
        size = k.bit_count()
        if c not in best or size < best[c]:
            best[c] = size
    return best


@dataclass
class ClassIndex:
    """Precomputed characteristic families of one context."""

    intents: list[AttrSet]
    pseudo_intents: list[AttrSet]
    keys: list[AttrSet]
    passkeys: list[AttrSet]
    proper_premises: list[AttrSet]
    min_key_size: dict[AttrSet, int]


def index_classes(ctx: FormalContext) -> ClassIndex:
    keys = enumerate_keys(ctx)
    return ClassIndex(
        intents=enumerate_intents(ctx),
        pseudo_intents=enumerate_pseudo_intents(ctx),
        keys=keys,
        passkeys=enumerate_passkeys(ctx, keys),
        proper_premises=enumerate_proper_premises(ctx, keys),
        min_key_size=min_key_sizes(ctx, keys),
    )


def _min_key_size_of_class(ctx: FormalContext, intent: AttrSet) -> int:
    """Smallest size of a generator of ``intent``, searched by size."""
    target = extent(ctx, intent)
    cols = ctx.columns
    universe = ctx.object_universe
    bits = list(iter_bits(intent))
    for size in range(len(bits) + 1):
        for comb in combinations(bits, size):
            e = universe
            for j in comb:
                e &= cols[j]
            if e == target:
                return size
    return len(bits)


def classify(
    ctx: FormalContext,
    attrs: AttrSet,
    pseudo_intents: Iterable[AttrSet],
    min_key_size_index: dict[AttrSet, int] | None = None,
) -> CharFlags:
    """Evaluate all characteristic flags of one attribute subset.

    ``pseudo_intents`` must be the complete pseudo-intent family of the
    context (the pseudo-intent property is not locally decidable).  The
    passkey flag needs the minimum key size of the subset's closure class;
    pass ``min_key_size_index`` to avoid recomputing it per call.
    """
    pseudo = (
        pseudo_intents
        if isinstance(pseudo_intents, (set, frozenset))
        else set(pseudo_intents)
    )
    c = closure(ctx, attrs)
    e = extent(ctx, attrs)
    is_key = True
    for j in iter_bits(attrs):
        if extent(ctx, attrs ^ (1 << j)) == e:
            is_key = False
            break
    u = attrs
    for j in iter_bits(attrs):
        u |= closure(ctx, attrs ^ (1 << j))
    is_passkey = False
    if is_key:
        if min_key_size_index is not None:
            smallest = min_key_size_index[c]
        else:
            smallest = _min_key_size_of_class(ctx, c)
        is_passkey = attrs.bit_count() == smallest
    return CharFlags(
        is_generator=True,
        is_intent=c == attrs,
        is_pseudo_intent=attrs in pseudo,
        is_key=is_key,
        is_passkey=is_passkey,
        is_proper_premise=u != c,
    )


# ---------------------------------------------------------------------------
# Brute-force oracles

BRUTE_FORCE_CLASSES = (
    "generator",
    "intent",
    "pseudo_intent",
    "key",
    "passkey",
    "proper_premise",
)


def _powerset_tables(ctx: FormalContext) -> tuple[list[int], dict[int, int], dict[int, int]]:
    """Extent and closure of every subset, by one dynamic-programming pass."""
    n = ctx.n_attrs
    if n > POWERSET_SCAN_LIMIT:
        raise CapacityError(
            f"brute-force scan over {n} attributes exceeds the "
            f"{POWERSET_SCAN_LIMIT}-attribute limit"
        )
    cols = ctx.columns
    ext: dict[int, int] = {0: ctx.object_universe}
    for mask in range(1, 1 << n):
        low = mask & -mask
        ext[mask] = ext[mask ^ low] & cols[low.bit_length() - 1]
    masks = list(iter_lectic_masks(n))
    cl: dict[int, int] = {}
    for mask in masks:
        e = ext[mask]
        c = 0
        for j in range(n):
            if cols[j] & e == e:
                c |= 1 << j
        cl[mask] = c
    return masks, ext, cl


def brute_force_all(ctx: FormalContext) -> dict[str, list[AttrSet]]:
    """Every characteristic family by literal definitional scan.

    Independent of the fast enumerations: each family is decided by
    quantifying the defining condition over the power set.
    """
    masks, ext, cl = _powerset_tables(ctx)
    intents = [m for m in masks if cl[m] == m]

    pseudo: list[tuple[int, int]] = []
    for mask in sorted(masks, key=lambda m: (m.bit_count(), bit_reverse(m, ctx.n_attrs))):
        c = cl[mask]
        if c == mask:
            continue
        if all(
            q_cl | mask == mask
            for q, q_cl in pseudo
            if q & mask == q and q != mask
        ):
            pseudo.append((mask, c))
    pseudo_masks = lectic_sorted([p for p, _ in pseudo], ctx.n_attrs)

    keys = [
        m
        for m in masks
        if all(ext[m ^ (1 << j)] != ext[m] for j in iter_bits(m))
    ]

    smallest: dict[int, int] = {}
    for m in masks:
        c = cl[m]
        if c not in smallest or m.bit_count() < smallest[c]:
            smallest[c] = m.bit_count()
    passkeys = [m for m in keys if m.bit_count() == smallest[cl[m]]]

    proper = []
    for m in masks:
        u = m
        for j in iter_bits(m):
            u |= cl[m ^ (1 << j)]
        if u != cl[m]:
            proper.append(m)

    return {
        "generator": masks,
        "intent": intents,
        "pseudo_intent": pseudo_masks,
        "key": keys,
        "passkey": passkeys,
        "proper_premise": proper,
    }


def brute_force_class(ctx: FormalContext, class_name: str) -> list[AttrSet]:
    """One characteristic family by literal scan; see ``brute_force_all``."""
    if class_name not in BRUTE_FORCE_CLASSES:
        raise ValueError(
            f"unknown class {class_name!r}, expected one of {BRUTE_FORCE_CLASSES}"
        )
    return brute_force_all(ctx)[class_name]
