"""Uniform time grids, sampled trajectories, and index-windowed sequences.

Index conventions used throughout the package: a grid with ``n`` subintervals
has nodes ``t_0 .. t_n``.  A forward (plus) sequence carries one value per
node index in ``{0, .., n-1}``, a backward (minus) sequence covers
``{1, .., n}``, and a residual field covers an explicit contiguous window
inside ``{0, .., n}``.  All value containers are immutable after
construction and safe for concurrent reads.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

#: Sign tags for the two one-sided conventions.  ``PLUS`` selects the
#: forward window {0, .., n-1}, ``MINUS`` the backward window {1, .., n}.
PLUS = 1
MINUS = -1


class DomainError(ValueError):
    """An argument violates the stated domain of an operation."""


def check_sigma(sigma: int) -> int:
    if sigma not in (PLUS, MINUS):
        raise DomainError(f"sigma must be +1 or -1, got {sigma!r}")
    return sigma


def sigma_label(sigma: int) -> str:
    return "+" if sigma == PLUS else "-"


def _freeze(values: np.ndarray) -> np.ndarray:
    # always copy, so a caller's array is never locked in place
    out = np.array(values, dtype=float, order="C")
    out.setflags(write=False)
    return out


def _as_matrix(values) -> np.ndarray:
    """Coerce to a 2-d (entries, dim) float array; 1-d input means dim=1."""
    arr = np.asarray(values, dtype=float)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2:
        raise DomainError(f"expected 1-d or 2-d values, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class Grid:
    """Uniform partition of [a, b] into ``n`` subintervals (``n + 1`` nodes).

    Nodes are computed as ``a + k*h`` rather than by cumulative summation,
    and the right endpoint is forced to ``b`` exactly.
    """

    a: float
    b: float
    n: int
    nodes: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))
        object.__setattr__(self, "n", int(self.n))
        if not self.b > self.a:
            raise DomainError(f"grid requires b > a, got a={self.a}, b={self.b}")
        if self.n < 2:
            raise DomainError(f"grid requires n >= 2 subintervals, got n={self.n}")
        nodes = self.a + self.h * np.arange(self.n + 1)
        nodes[-1] = self.b
        object.__setattr__(self, "nodes", _freeze(nodes))

    @property
    def h(self) -> float:
        return (self.b - self.a) / self.n

    def node(self, k: int) -> float:
        return float(self.nodes[k])


def make_grid(a: float, b: float, n: int) -> Grid:
    """Build the uniform grid on [a, b] with ``n`` subintervals."""
    return Grid(a, b, n)


@dataclass(frozen=True)
class Trajectory:
    """Discrete curve: one d-dimensional value per grid node."""

    grid: Grid
    values: np.ndarray  # shape (n + 1, d)

    def __post_init__(self):
        arr = _as_matrix(self.values)
        if arr.shape[0] != self.grid.n + 1:
            raise DomainError(
                f"trajectory needs {self.grid.n + 1} entries, got {arr.shape[0]}"
            )
        object.__setattr__(self, "values", _freeze(arr))

    @property
    def dim(self) -> int:
        return self.values.shape[1]

    def value_at(self, k: int) -> np.ndarray:
        if not 0 <= k <= self.grid.n:
            raise IndexError(f"node index {k} outside 0..{self.grid.n}")
        return self.values[k]


@dataclass(frozen=True)
class ShiftedSequence:
    """Values indexed over the one-sided window I_sigma.

    ``side=PLUS`` covers node indices {0, .., n-1}; ``side=MINUS`` covers
    {1, .., n}.  Access outside the declared window is an error, never a
    silent wraparound.
    """

    grid: Grid
    side: int
    values: np.ndarray  # shape (n, d)

    def __post_init__(self):
        check_sigma(self.side)
        arr = _as_matrix(self.values)
        if arr.shape[0] != self.grid.n:
            raise DomainError(
                f"shifted sequence needs {self.grid.n} entries, got {arr.shape[0]}"
            )
        object.__setattr__(self, "values", _freeze(arr))

    @property
    def dim(self) -> int:
        return self.values.shape[1]

    @property
    def k_start(self) -> int:
        return 0 if self.side == PLUS else 1

    @property
    def indices(self) -> range:
        return range(self.k_start, self.k_start + self.grid.n)

    def value_at(self, k: int) -> np.ndarray:
        if k not in self.indices:
            raise IndexError(
                f"index {k} outside window {self.indices.start}.."
                f"{self.indices.stop - 1} (side {sigma_label(self.side)})"
            )
        return self.values[k - self.k_start]


@dataclass(frozen=True)
class ResidualField:
    """Per-node residual of a discrete Euler-Lagrange scheme.

    The window start depends on the producing scheme; see each assembler.
    """

    grid: Grid
    k_start: int
    values: np.ndarray  # shape (m, d)

    def __post_init__(self):
        arr = _as_matrix(self.values)
        if arr.shape[0] < 1:
            raise DomainError("residual field must hold at least one entry")
        if self.k_start < 0 or self.k_start + arr.shape[0] - 1 > self.grid.n:
            raise DomainError(
                f"window {self.k_start}..{self.k_start + arr.shape[0] - 1} "
                f"outside grid nodes 0..{self.grid.n}"
            )
        object.__setattr__(self, "values", _freeze(arr))

    @property
    def dim(self) -> int:
        return self.values.shape[1]

    @property
    def indices(self) -> range:
        return range(self.k_start, self.k_start + self.values.shape[0])

    def value_at(self, k: int) -> np.ndarray:
        if k not in self.indices:
            raise IndexError(
                f"index {k} outside window {self.indices.start}.."
                f"{self.indices.stop - 1}"
            )
        return self.values[k - self.k_start]


Sequence = Union[Trajectory, ShiftedSequence, ResidualField]


def sample(f: Callable[[float], object], grid: Grid) -> Trajectory:
    """Sample a curve at the grid nodes: Q_k = f(t_k)."""
    rows = [np.atleast_1d(np.asarray(f(t), dtype=float)) for t in grid.nodes]
    dims = {row.shape for row in rows}
    if len(dims) != 1:
        raise DomainError(f"curve returned inconsistent shapes: {sorted(dims)}")
    return Trajectory(grid, np.vstack(rows))


def restrict(traj: Trajectory, side: int) -> ShiftedSequence:
    """Restrict a trajectory to the one-sided window I_sigma."""
    check_sigma(side)
    rows = traj.values[:-1] if side == PLUS else traj.values[1:]
    return ShiftedSequence(traj.grid, side, rows)


def inf_norm(x: Sequence) -> float:
    """Maximum absolute component over all entries."""
    if x.values.size == 0:
        raise DomainError("inf_norm of an empty sequence")
    return float(np.max(np.abs(x.values)))


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def write_trajectory_csv(traj: Trajectory, path) -> None:
    """Write ``k,t,q0[,q1,...]`` rows at full double precision."""
    header = ["k", "t"] + [f"q{c}" for c in range(traj.dim)]
    with open(path, "w", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for k in range(traj.grid.n + 1):
            row = [str(k), _fmt(traj.grid.node(k))]
            row += [_fmt(v) for v in traj.values[k]]
            writer.writerow(row)


def read_trajectory_csv(path) -> Trajectory:
    """Read a trajectory written by :func:`write_trajectory_csv`."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header[:2] != ["k", "t"]:
            raise DomainError(f"unexpected trajectory header: {header}")
        times = []
        rows = []
        for rec in reader:
            times.append(float(rec[1]))
            rows.append([float(v) for v in rec[2:]])
    if len(rows) < 3:
        raise DomainError("trajectory file needs at least 3 nodes")
    grid = Grid(times[0], times[-1], len(rows) - 1)
    return Trajectory(grid, np.asarray(rows))
