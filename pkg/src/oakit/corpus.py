"""Generator families used by the verification suites.

Poset and topology enumeration is up to isomorphism: every finite poset
has a linear extension, so generating orders contained in the natural
index order and deduplicating by a permutation-canonical form covers all
isomorphism classes.
"""
from __future__ import annotations

from itertools import combinations, permutations

from .config import Caps, default_caps
from .lattice import (
    FinLattice,
    FinPoset,
    Topology,
    downset_lattice,
    lattice_from_poset,
    poset_from_pairs,
    powerset_lattice,
    product_lattice,
)


def chain(k: int) -> FinLattice:
    """The k-element chain 0 < 1 < ... < k-1."""
    P = poset_from_pairs(k, [(i, i + 1) for i in range(k - 1)])
    return lattice_from_poset(P)


def diamond() -> FinLattice:
    """Four elements: bottom, two incomparable middles, top."""
    P = poset_from_pairs(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
    return lattice_from_poset(P)


def pentagon() -> FinLattice:
    """N5: bottom 0, chain 1 < 2, single 3, top 4; not distributive."""
    P = poset_from_pairs(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])
    return lattice_from_poset(P)


def _canonical(n: int, strict_pairs: frozenset[tuple[int, int]]) -> tuple:
    best = None
    for perm in permutations(range(n)):
        relabeled = tuple(sorted((perm[i], perm[j]) for i, j in strict_pairs))
        if best is None or relabeled < best:
            best = relabeled
    return best


def all_posets(n: int) -> list[FinPoset]:
    """All posets on n elements, one per isomorphism class."""
    if n == 0:
        return []
    cells = list(combinations(range(n), 2))
    seen = set()
    out = []
    for mask in range(1 << len(cells)):
        pairs = frozenset(cells[i] for i in range(len(cells)) if mask >> i & 1)
        # transitivity inside the natural order
        closed = True
        for a, b in pairs:
            for b2, c in pairs:
                if b == b2 and (a, c) not in pairs:
                    closed = False
                    break
            if not closed:
                break
        if not closed:
            continue
        key = _canonical(n, pairs)
        if key in seen:
            continue
        seen.add(key)
        out.append(poset_from_pairs(n, pairs))
    return out


def all_topologies(n: int) -> list[Topology]:
    """All topologies on n points, one per homeomorphism class.

    Finite topologies are the up-set families of preorders; preorders are
    enumerated directly and deduplicated by canonical form.
    """
    cells = [(i, j) for i in range(n) for j in range(n) if i != j]
    seen = set()
    out = []
    for mask in range(1 << len(cells)):
        rel = {cells[i] for i in range(len(cells)) if mask >> i & 1}
        closed = True
        for a, b in rel:
            for b2, c in rel:
                if b == b2 and a != c and (a, c) not in rel:
                    closed = False
                    break
            if not closed:
                break
        if not closed:
            continue
        key = _canonical_pre(n, frozenset(rel))
        if key in seen:
            continue
        seen.add(key)
        up = [1 << i for i in range(n)]
        for a, b in rel:
            up[a] |= 1 << b
        opens = []
        for m in range(1 << n):
            if all(up[i] & ~m == 0 for i in range(n) if m >> i & 1):
                opens.append(m)
        out.append(Topology(n, tuple(sorted(opens))))
    return out


def _canonical_pre(n: int, rel: frozenset[tuple[int, int]]) -> tuple:
    best = None
    for perm in permutations(range(n)):
        relabeled = tuple(sorted((perm[i], perm[j]) for i, j in rel))
        if best is None or relabeled < best:
            best = relabeled
    return best


def boolean_algebras(max_size: int = 8) -> list[FinLattice]:
    out = []
    k = 0
    while (1 << k) <= max_size:
        out.append(powerset_lattice(k))
        k += 1
    return out


def acceptance_frames(caps: Caps | None = None,
                      product_cap: int = 64) -> list[tuple[str, FinLattice]]:
    """The frame corpus for the verification suite.

    Down-set lattices of every poset on up to 5 elements, powersets up to
    4 points, chains up to 6 elements, and pairwise products of a small
    seed family.
    """
    caps = caps or default_caps()
    out: list[tuple[str, FinLattice]] = []
    for n in range(1, 6):
        for i, P in enumerate(all_posets(n)):
            out.append((f"downsets(P{n}.{i})", downset_lattice(P, caps=caps)))
    for n in range(5):
        out.append((f"Pow({n})", powerset_lattice(n, caps=caps)))
    for k in range(1, 7):
        out.append((f"chain({k})", chain(k)))
    seeds = [
        ("chain(2)", chain(2)),
        ("chain(3)", chain(3)),
        ("chain(4)", chain(4)),
        ("Pow(1)", powerset_lattice(1)),
        ("Pow(2)", powerset_lattice(2)),
        ("diamond", diamond()),
    ]
    for i in range(len(seeds)):
        for j in range(i, len(seeds)):
            na, A = seeds[i]
            nb, B = seeds[j]
            if A.size * B.size > product_cap:
                continue
            prod, _ = product_lattice([A, B], caps=caps)
            out.append((f"{na}x{nb}", prod))
    return out
