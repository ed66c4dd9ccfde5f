"""Polynomial set functors presented as algebraic signatures.

A signature with operations sigma of arity k presents the functor
F(X) = sum over sigma of X^k.  Elements of the n-fold application F^n(X)
are trees of uniform leaf depth: generator leaves sit at depth exactly n,
and any branch that bottoms out earlier must end in a 0-arity operation.

Trees are nested tuples: ``("var", label)`` for a generator leaf and
``("op", symbol, (child, ...))`` for an operation node.  Tuples keep terms
hashable and give a total, deterministic ordering for free.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Union

Tree = tuple  # ("var", label) | ("op", symbol, (Tree, ...))

DEFAULT_TERM_CAP = 100_000


class SignatureError(ValueError):
    pass


class CapExceeded(RuntimeError):
    """Enumeration would exceed the configured size cap.

    Raised instead of truncating; carries the offending level and the
    count that broke the cap.
    """

    def __init__(self, level: int, count: int, cap: int):
        super().__init__(f"level {level} holds {count} terms, cap is {cap}")
        self.level = level
        self.count = count
        self.cap = cap


@dataclass(frozen=True)
class Signature:
    """A finite list of (symbol, arity) pairs with distinct symbols."""

    ops: tuple[tuple[str, int], ...]

    def __post_init__(self):
        seen = set()
        for name, arity in self.ops:
            if name in seen:
                raise SignatureError(f"duplicate operation symbol {name!r}")
            if arity < 0:
                raise SignatureError(f"negative arity for {name!r}")
            seen.add(name)

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.ops)

    def arity(self, symbol: str) -> int:
        for name, ar in self.ops:
            if name == symbol:
                return ar
        raise SignatureError(f"unknown operation symbol {symbol!r}")

    def sorted_ops(self) -> list[tuple[str, int]]:
        return sorted(self.ops)


def signature(ops: Iterable[tuple[str, int]]) -> Signature:
    return Signature(tuple(ops))


@dataclass(frozen=True)
class Term:
    """An element of F^rank(X): a tree with all generator leaves at depth rank."""

    sig: Signature
    rank: int
    tree: Tree

    def __post_init__(self):
        if self.rank < 0:
            raise SignatureError("rank must be >= 0")
        _check_tree(self.sig, self.tree, 0, self.rank)

    def leaves(self) -> list:
        """Generator-leaf labels in left-to-right order."""
        out = []
        _collect_leaves(self.tree, out)
        return out

    def sort_key(self):
        return _tree_key(self.tree)


def _check_tree(sig: Signature, node: Tree, depth: int, rank: int) -> None:
    if node[0] == "var":
        if depth != rank:
            raise SignatureError(
                f"generator leaf {node[1]!r} at depth {depth}, expected {rank}"
            )
        return
    if node[0] != "op":
        raise SignatureError(f"malformed tree node {node!r}")
    _, symbol, children = node
    arity = sig.arity(symbol)
    if len(children) != arity:
        raise SignatureError(
            f"{symbol!r} has arity {arity}, got {len(children)} children"
        )
    if depth >= rank:
        # depth == rank holds generator leaves only; constants stop earlier
        raise SignatureError(f"operation node {symbol!r} too deep at {depth}")
    for child in children:
        _check_tree(sig, child, depth + 1, rank)


def _collect_leaves(node: Tree, out: list) -> None:
    if node[0] == "var":
        out.append(node[1])
    else:
        for child in node[2]:
            _collect_leaves(child, out)


def _tree_key(node: Tree):
    if node[0] == "var":
        return ("var", str(node[1]))
    return ("op", node[1], tuple(_tree_key(c) for c in node[2]))


def var_term(sig: Signature, label) -> Term:
    return Term(sig, 0, ("var", label))


def op_term(sig: Signature, symbol: str, children: Iterable[Term]) -> Term:
    """Build a rank-(n+1) term from rank-n children sharing a rank."""
    kids = tuple(children)
    if kids:
        rank = kids[0].rank
        if any(k.rank != rank for k in kids):
            raise SignatureError("children must share a rank")
        return Term(sig, rank + 1, ("op", symbol, tuple(k.tree for k in kids)))
    # a constant is a term of every rank >= 1; default to rank 1
    return Term(sig, 1, ("op", symbol, ()))


def at_rank(t: Term, rank: int) -> Term:
    """Re-annotate a leafless term at a higher rank (constants live at all ranks)."""
    if t.leaves():
        raise SignatureError("only leafless terms can be re-ranked freely")
    if rank < t.rank:
        raise SignatureError("cannot lower the rank")
    return Term(t.sig, rank, t.tree)


def f_enumerate(sig: Signature, generators: Iterable) -> list[Term]:
    """All elements of F(X): sigma(x_1..x_m) for each operation and tuple over X."""
    gens = sorted(generators, key=str)
    out = []
    for symbol, arity in sig.sorted_ops():
        for combo in itertools.product(gens, repeat=arity):
            out.append(
                Term(sig, 1, ("op", symbol, tuple(("var", x) for x in combo)))
            )
    return out


def count_rank(sig: Signature, n_generators: int, rank: int) -> int:
    """|F^rank(X)| by the recurrence c0 = |X|, c_{k+1} = sum of c_k^arity."""
    count = n_generators
    for _ in range(rank):
        count = sum(count ** arity for _, arity in sig.ops)
    return count


def enumerate_rank(
    sig: Signature, generators: Iterable, rank: int, cap: int = DEFAULT_TERM_CAP
) -> list[Term]:
    """All elements of F^rank(X), deterministically ordered; errors past the cap."""
    gens = sorted(generators, key=str)
    for level in range(rank + 1):
        count = count_rank(sig, len(gens), level)
        if count > cap:
            raise CapExceeded(level, count, cap)
    trees = [("var", x) for x in gens]
    for _ in range(rank):
        nxt = []
        for symbol, arity in sig.sorted_ops():
            for combo in itertools.product(trees, repeat=arity):
                nxt.append(("op", symbol, tuple(combo)))
        trees = nxt
    return [Term(sig, rank, tree) for tree in trees]


def unfold_once(t: Term, assignment: Mapping) -> Term:
    """Substitute each generator leaf x by the rank-1 term assignment[x].

    The result has rank t.rank + 1; leafless subtrees are untouched (their
    rank annotation still increments with the whole term).
    """
    def go(node: Tree) -> Tree:
        if node[0] == "var":
            return assignment[node[1]].tree
        return ("op", node[1], tuple(go(c) for c in node[2]))

    return Term(t.sig, t.rank + 1, go(t.tree))


def unfold(t: Term, assignment: Mapping, times: int) -> Term:
    for _ in range(times):
        t = unfold_once(t, assignment)
    return t


def map_leaves(t: Term, relabel: Union[Mapping, Callable]) -> Term:
    """Relabel generator leaves; tree shape and rank are preserved."""
    get = relabel.__getitem__ if isinstance(relabel, Mapping) else relabel

    def go(node: Tree) -> Tree:
        if node[0] == "var":
            return ("var", get(node[1]))
        return ("op", node[1], tuple(go(c) for c in node[2]))

    return Term(t.sig, t.rank, go(t.tree))


def tree_to_str(node: Tree) -> str:
    if node[0] == "var":
        return str(node[1])
    _, symbol, children = node
    if not children:
        return symbol
    return f"{symbol}({', '.join(tree_to_str(c) for c in children)})"


def term_to_str(t: Term) -> str:
    return tree_to_str(t.tree)
