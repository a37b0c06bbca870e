"""Finite groups as Cayley tables, subgroup enumeration, and coset states."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import (
    EmptyList,
    GroupTooLarge,
    NoIdentity,
    NotAssociative,
    NotLatinSquare,
    ParseError,
    SubgroupMismatch,
    ValidationError,
)
from .states import DensityMatrix, Ensemble, uniform_ensemble

# Subgroup enumeration stays exhaustive and cheap up to this order.
MAX_GROUP_ORDER = 64


@dataclass(frozen=True)
class Group:
    """Finite group as a Cayley table on element indices; identity is 0."""

    table: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.table, dtype=np.int64)
        _validate_table(t)
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])


@dataclass(frozen=True)
class Subgroup:
    """Strictly ascending element indices of a closed subset containing 0."""

    elements: tuple[int, ...]

    def __post_init__(self):
        elems = tuple(int(x) for x in self.elements)
        if not elems or elems[0] != 0:
            raise SubgroupMismatch("a subgroup must contain the identity 0")
        if any(b <= a for a, b in zip(elems, elems[1:])):
            raise SubgroupMismatch("elements must be strictly ascending")
        object.__setattr__(self, "elements", elems)

    @property
    def order(self) -> int:
        return len(self.elements)


def _validate_table(t: np.ndarray) -> None:
    if t.ndim != 2 or t.shape[0] != t.shape[1]:
        raise NotLatinSquare(f"table must be square, got shape {t.shape}")
    n = t.shape[0]
    if n < 1:
        raise NotLatinSquare("table must be at least 1x1")
    if t.min() < 0 or t.max() >= n:
        raise NotLatinSquare(f"entries must lie in [0, {n})")
    ident = np.arange(n)
    for a in range(n):
        if len(set(t[a])) != n:
            raise NotLatinSquare(f"row {a} repeats an entry")
        if len(set(t[:, a])) != n:
            raise NotLatinSquare(f"column {a} repeats an entry")
    if not (np.array_equal(t[0], ident) and np.array_equal(t[:, 0], ident)):
        raise NoIdentity("index 0 is not a two-sided identity")
    # associativity: (a∘b)∘c == a∘(b∘c), exhaustive
    left = t[t, :]
    right = t[:, t]
    if not np.array_equal(left, right):
        a, b, c = np.argwhere(left != right)[0]
        raise NotAssociative(f"({a}∘{b})∘{c} != {a}∘({b}∘{c})")


def group_from_cayley(table) -> Group:
    """Validate a Cayley table; relabels so the identity sits at index 0."""
    t = np.asarray(table, dtype=np.int64)
    if t.ndim != 2 or t.shape[0] != t.shape[1]:
        raise NotLatinSquare(f"table must be square, got shape {t.shape}")
    n = t.shape[0]
    if n >= 1 and 0 <= t.min() and t.max() < n:
        ident = np.arange(n)
        candidates = [
            e
            for e in range(n)
            if np.array_equal(t[e], ident) and np.array_equal(t[:, e], ident)
        ]
        if not candidates:
            # let _validate_table raise the precise Latin/identity error
            return Group(t)
        e = candidates[0]
        if e != 0:
            perm = ident.copy()
            perm[[0, e]] = perm[[e, 0]]  # swap labels 0 and e
            t = perm[t[np.ix_(perm, perm)]]
    return Group(t)


def cyclic_group(n: int) -> Group:
    """Z_n with table (a + b) mod n."""
    if n < 1:
        raise ValidationError("order must be >= 1")
    a = np.arange(n)
    return Group((a[:, None] + a[None, :]) % n)


def dihedral_group(m: int) -> Group:
    """Order-2m dihedral group: indices 0..m-1 rotations, m..2m-1 reflections."""
    if m < 1:
        raise ValidationError("m must be >= 1")
    n = 2 * m
    t = np.zeros((n, n), dtype=np.int64)
    for a in range(m):
        for b in range(m):
            t[a, b] = (a + b) % m                  # r^a r^b
            t[a, m + b] = m + (a + b) % m          # r^a (r^b s)
            t[m + a, b] = m + (a - b) % m          # (r^a s) r^b
            t[m + a, m + b] = (a - b) % m          # (r^a s)(r^b s)
    return Group(t)


def _closure(g: Group, seed: frozenset[int]) -> tuple[int, ...]:
    elems = set(seed) | {0}
    frontier = list(elems)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(elems):
                for c in (g.mul(a, b), g.mul(b, a)):
                    if c not in elems:
                        elems.add(c)
                        nxt.append(c)
        frontier = nxt
    return tuple(sorted(elems))


def subgroup_from_elements(g: Group, elements) -> Subgroup:
    """Validate a candidate element set as a subgroup of g."""
    sub = Subgroup(tuple(sorted(int(x) for x in set(elements))))
    if sub.elements[-1] >= g.order:
        raise SubgroupMismatch(
            f"element {sub.elements[-1]} outside group of order {g.order}"
        )
    members = set(sub.elements)
    for a in sub.elements:
        for b in sub.elements:
            if g.mul(a, b) not in members:
                raise SubgroupMismatch(
                    f"not closed: {a}∘{b} = {g.mul(a, b)} missing"
                )
    if g.order % sub.order != 0:
        raise SubgroupMismatch(
            f"order {sub.order} does not divide group order {g.order}"
        )
    return sub


def enumerate_subgroups(g: Group) -> list[Subgroup]:
    """All subgroups, sorted by (order, elements).

    Grows the subgroup lattice by closing single generators and then
    repeatedly adjoining one new generator to known subgroups until a fixed
    point; every subgroup of a group this small is reachable that way.
    """
    if g.order > MAX_GROUP_ORDER:
        raise GroupTooLarge(f"order {g.order} exceeds cap {MAX_GROUP_ORDER}")
    found: set[tuple[int, ...]] = {_closure(g, frozenset())}
    frontier = set(found)
    while frontier:
        fresh: set[tuple[int, ...]] = set()
        for base in frontier:
            members = set(base)
            for x in range(g.order):
                if x in members:
                    continue
                ext = _closure(g, frozenset(base) | {x})
                if ext not in found:
                    found.add(ext)
                    fresh.add(ext)
        frontier = fresh
    subs = [Subgroup(elems) for elems in found]
    subs.sort(key=lambda s: (s.order, s.elements))
    return subs


def coset_state(g: Group, h: Subgroup) -> DensityMatrix:
    """Uniform mixture of coset superpositions |aH⟩ in the group-element basis."""
    h = subgroup_from_elements(g, h.elements)
    n = g.order
    amp = 1.0 / np.sqrt(h.order)
    rho = np.zeros((n, n), dtype=np.complex128)
    for a in range(n):
        v = np.zeros(n, dtype=np.complex128)
        v[g.table[a, list(h.elements)]] = amp
        rho += np.outer(v, v.conj())
    return DensityMatrix(rho / n)


def hsp_ensemble(g: Group, subgroups) -> Ensemble:
    """Uniform-prior ensemble of the coset states of the listed subgroups."""
    subgroups = list(subgroups)
    if not subgroups:
        raise EmptyList("need at least one subgroup")
    return uniform_ensemble([coset_state(g, h) for h in subgroups])


# -- JSON wire format ----------------------------------------------------------

def group_to_json(g: Group) -> dict:
    return {"order": g.order, "table": g.table.tolist()}


def group_from_json(doc) -> Group:
    if not isinstance(doc, dict):
        raise ParseError("top level: expected an object")
    for key in ("order", "table"):
        if key not in doc:
            raise ParseError(f"top level: missing key '{key}'")
    order, table = doc["order"], doc["table"]
    if not isinstance(order, int) or order < 1:
        raise ParseError("order: expected a positive integer")
    if (
        not isinstance(table, list)
        or len(table) != order
        or any(not isinstance(row, list) or len(row) != order for row in table)
        or any(not isinstance(x, int) for row in table for x in row)
    ):
        raise ParseError(f"table: expected a {order}x{order} integer array")
    return group_from_cayley(table)


def load_group(path) -> Group:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as err:
            raise ParseError(f"{path}: invalid JSON ({err})") from err
    return group_from_json(doc)


def save_group(g: Group, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(group_to_json(g), fh)
        fh.write("\n")


def subgroups_from_json(g: Group, doc) -> list[Subgroup]:
    """Parse a JSON array of {"elements": [...]} against a group."""
    if not isinstance(doc, list) or not doc:
        raise ParseError("top level: expected a nonempty array of subgroups")
    subs = []
    for i, item in enumerate(doc):
        if not isinstance(item, dict) or "elements" not in item:
            raise ParseError(f"[{i}]: expected an object with key 'elements'")
        elems = item["elements"]
        if not isinstance(elems, list) or any(not isinstance(x, int) for x in elems):
            raise ParseError(f"[{i}].elements: expected an integer array")
        try:
            subs.append(subgroup_from_elements(g, elems))
        except ValidationError as err:
            raise type(err)(f"[{i}].elements: {err}") from err
    return subs


def load_subgroups(g: Group, path) -> list[Subgroup]:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as err:
            raise ParseError(f"{path}: invalid JSON ({err})") from err
    return subgroups_from_json(g, doc)
