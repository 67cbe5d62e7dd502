"""Append-only growing tree with an O(1) degree-class index."""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from . import _kernels as K


class InvalidNodeError(IndexError):
    """Raised when an operation names a node id that does not exist."""


class GrowingTree:
    """A tree that only ever grows by attaching leaves.

    Node ids are dense and equal to birth order; nodes 0 and 1 form the seed
    edge and node 0 is the root. Alongside the adjacency the tree keeps a
    permutation of node ids sorted by descending degree, so every degree value
    maps to a contiguous block ("bucket") of ids. Moving a node from degree d
    to d + 1 is a single swap, which makes sampling by degree class cheap.

    Args:
        capacity: Number of nodes to preallocate. The tree grows past it
            automatically, but growth loops should call :meth:`reserve` first.
    """

    def __init__(self, capacity: int = 16):
        self._alloc(max(int(capacity), 2))
        K.init_seed(self._state)

    def _alloc(self, capacity):
        c = capacity
        self._state = (
            np.zeros(4, dtype=np.int64),
            np.zeros(c, dtype=np.int64),
            np.zeros(c, dtype=np.int64),
            np.zeros(c, dtype=np.int64),
            np.zeros(c, dtype=np.int64),
            np.zeros(K.pool_size(c), dtype=np.int64),
            np.zeros(c, dtype=np.int64),
            np.zeros(c, dtype=np.int64),
            np.zeros(c + 2, dtype=np.int64),
            np.zeros(c + 2, dtype=np.int64),
            np.zeros(c + 2, dtype=np.int64),
        )

    @property
    def capacity(self) -> int:
        return self._state[1].shape[0]

    def reserve(self, capacity: int) -> None:
        """Make room for ``capacity`` nodes without changing the tree."""
        if capacity <= self.capacity:
            return
        parents = self.parents()
        self._alloc(int(capacity))
        K.build_from_parents(self._state, parents[1:])

    @classmethod
    def from_parents(cls, parents, capacity: int | None = None) -> "GrowingTree":
        """Rebuild a tree from ``parents[i] = parent of node i + 1``."""
        parents = np.ascontiguousarray(parents, dtype=np.int64)
        if parents.ndim != 1 or parents.size == 0 or parents[0] != 0:
            raise ValueError("parent array must start with node 1 attached to node 0")
        births = np.arange(1, parents.size + 1)
        if np.any(parents < 0) or np.any(parents >= births):
            raise ValueError("every parent must be an earlier node")
        tree = cls(capacity=max(capacity or 0, parents.size + 1))
        K.build_from_parents(tree._state, parents[1:])
        return tree

    # -- basic accessors -------------------------------------------------

    @property
    def n(self) -> int:
        return int(self._state[0][0])

    def __len__(self) -> int:
        return self.n

    @property
    def degree(self) -> np.ndarray:
        """Read-only view of the degree array."""
        view = self._state[2][: self.n]
        view.flags.writeable = False
        return view

    @property
    def parent(self) -> np.ndarray:
        """Per-node parent id; the root has -1."""
        view = self._state[1][: self.n]
        view.flags.writeable = False
        return view

    def parents(self) -> np.ndarray:
        """Parent of every non-root node, i.e. ``parent[1:]`` (the persisted form)."""
        return self._state[1][1 : self.n].copy()

    def neighbors(self, i: int) -> np.ndarray:
        self._check(i)
        start = self._state[3][i]
        return self._state[5][start : start + self._state[2][i]].copy()

    @property
    def adjacency(self) -> list[np.ndarray]:
        return [self.neighbors(i) for i in range(self.n)]

    def edges(self) -> np.ndarray:
        """(n - 1, 2) array of (child, parent) pairs."""
        return np.column_stack([np.arange(1, self.n), self.parents()])

    @property
    def lead_changes(self) -> int:
        return int(self._state[0][3])

    @property
    def king(self) -> int:
        """Last node that was the unique maximum-degree node, -1 if never."""
        return int(self._state[0][2])

    def _check(self, i):
        if not 0 <= i < self.n:
            raise InvalidNodeError(f"node {i} not in tree of size {self.n}")

    # -- degree-class index ----------------------------------------------

    def degree_values(self) -> np.ndarray:
        """Occupied degree values in ascending order."""
        occ_next = self._state[9]
        out = []
        d = occ_next[0]
        while d != 0:
            out.append(d)
            d = occ_next[d]
        return np.array(out, dtype=np.int64)

    def min_degree(self) -> int:
        return int(self._state[9][0])

    def max_degree(self) -> int:
        return int(self._state[10][0])

    def count(self, d: int) -> int:
        """Number of nodes with degree ``d``."""
        if d < 1 or d > self.n:
            return 0
        return int(self._state[8][d - 1] - self._state[8][d])

    def member(self, d: int, k: int) -> int:
        """The k-th node of the degree-``d`` bucket (arbitrary but fixed order)."""
        c = self.count(d)
        if not 0 <= k < c:
            raise IndexError(f"bucket {d} has {c} members")
        return int(self._state[6][self._state[8][d] + k])

    def bucket(self, d: int) -> np.ndarray:
        c = self.count(d)
        start = self._state[8][d] if c else 0
        return np.sort(self._state[6][start : start + c])

    def index_snapshot(self) -> dict[int, np.ndarray]:
        """{degree: sorted member ids} as maintained incrementally."""
        return {int(d): self.bucket(d) for d in self.degree_values()}

    # -- mutation ---------------------------------------------------------

    def add_leaf(self, attach_to: int) -> int:
        """Attach a new node to ``attach_to`` and return its id."""
        self._check(int(attach_to))
        if self.n >= self.capacity:
            self.reserve(2 * self.capacity)
        v = K.add_leaf(self._state, int(attach_to))
        K.update_king(self._state)
        return int(v)

    def diameter(self) -> int:
        return int(K.diameter(self._state))

    def copy(self) -> "GrowingTree":
        other = GrowingTree.__new__(GrowingTree)
        other._state = tuple(a.copy() for a in self._state)
        return other

    def __getstate__(self):
        return {"state": self._state}

    def __setstate__(self, d):
        self._state = d["state"]

    def __repr__(self):
        return f"GrowingTree(n={self.n}, max_degree={self.max_degree()})"


def new_seed(capacity: int = 16) -> GrowingTree:
    """Two nodes joined by one edge."""
    return GrowingTree(capacity)


def path(n: int) -> GrowingTree:
    """Chain 0 - 1 - ... - (n-1)."""
    return GrowingTree.from_parents(np.arange(n - 1))


def star(n: int) -> GrowingTree:
    """Node 0 joined to n - 1 leaves."""
    return GrowingTree.from_parents(np.zeros(n - 1, dtype=np.int64))


# -- persistence ----------------------------------------------------------


def write_parents_csv(tree: GrowingTree, path_like) -> None:
    with open(path_like, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["node", "parent"])
        for node, par in zip(range(1, tree.n), tree.parents()):
            w.writerow([node, int(par)])


def read_parents_csv(path_like) -> GrowingTree:
    with open(path_like, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if [h.strip() for h in header] != ["node", "parent"]:
            raise ValueError(f"unexpected header {header!r}")
        rows = [(int(a), int(b)) for a, b in reader]
    nodes = [a for a, _ in rows]
    if nodes != list(range(1, len(rows) + 1)):
        raise ValueError("node column must list 1..n-1 in order")
    return GrowingTree.from_parents(np.array([b for _, b in rows], dtype=np.int64))


def write_parents_binary(tree: GrowingTree, path_like) -> None:
    Path(path_like).write_bytes(tree.parents().astype("<u4").tobytes())


def read_parents_binary(path_like) -> GrowingTree:
    parents = np.frombuffer(Path(path_like).read_bytes(), dtype="<u4")
    return GrowingTree.from_parents(parents.astype(np.int64))
