"""Red/blue boards where every 2x2 window holds an even number of red cells.

Row 0 is the bottom row and column 0 the left column. The text format
lists rows top first, one ``R``/``B`` character per cell.
"""
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import rng

MAX_SIDE = 64


class Color(Enum):
    RED = "R"
    BLUE = "B"

    @classmethod
    def parse(cls, value):
        if isinstance(value, Color):
            return value
        if isinstance(value, (bool, int, np.integer, np.bool_)) and value in (0, 1):
            return cls.RED if value else cls.BLUE
        try:
            return cls(str(value).upper())
        except ValueError:
            raise ValueError(f"not a color: {value!r}") from None


def _red(values):
    return np.array([Color.parse(v) is Color.RED for v in values], dtype=bool)


@dataclass(frozen=True, eq=False)
class Board:
    rows: int
    cols: int
    red: np.ndarray  # bool, red[r, c], r = 0 at the bottom

    def __post_init__(self):
        if not (1 <= self.rows <= MAX_SIDE and 1 <= self.cols <= MAX_SIDE):
            raise ValueError(f"board sides must lie in [1, {MAX_SIDE}]")
        red = np.array(self.red, dtype=bool)
        if red.shape != (self.rows, self.cols):
            raise ValueError("cell array does not match board dimensions")
        red.setflags(write=False)
        object.__setattr__(self, "red", red)

    def __eq__(self, other):
        if not isinstance(other, Board):
            return NotImplemented
        return np.array_equal(self.red, other.red)

    __hash__ = None

    def cell(self, r, c):
        return Color.RED if self.red[r, c] else Color.BLUE

    def to_text(self):
        return "\n".join(
            "".join("R" if x else "B" for x in self.red[r]) for r in range(self.rows - 1, -1, -1)
        ) + "\n"

    @classmethod
    def from_text(cls, text):
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty board")
        width = len(lines[0])
        for i, ln in enumerate(lines):
            if len(ln) != width:
                raise ValueError(f"board line {i + 1} has {len(ln)} cells, expected {width}")
            if set(ln) - {"R", "B"}:
                raise ValueError(f"board line {i + 1} contains characters other than R/B")
        red = np.array([[ch == "R" for ch in ln] for ln in reversed(lines)], dtype=bool)
        return cls(len(lines), width, red)

    def __str__(self):
        return self.to_text()


def window_parities(red):
    """Red count mod 2 of every 2x2 window."""
    red = np.asarray(red, dtype=np.uint8)
    return (red[:-1, :-1] + red[1:, :-1] + red[:-1, 1:] + red[1:, 1:]) & 1


def validate(board):
    return not window_parities(board.red).any()


def complete_from_seed(bottom_row, left_column, trace=False):
    """The unique valid board with the given bottom row and left column.

    Cell ``(r, c)`` for ``r, c >= 1`` is forced by its three neighbours
    below and to the left. With ``trace=True`` also return the fill order
    as a list of stages; stage 0 is the seed.
    """
    bottom = _red(bottom_row)
    left = _red(left_column)
    if bottom.size == 0 or left.size == 0:
        raise ValueError("seed row and column must be nonempty")
    if bottom[0] != left[0]:
        raise ValueError("bottom row and left column disagree on the corner cell")
    rows, cols = left.size, bottom.size
    red = np.zeros((rows, cols), dtype=bool)
    red[0, :] = bottom
    red[:, 0] = left
    stages = [[(0, c) for c in range(cols)] + [(r, 0) for r in range(1, rows)]]
    for t in range(1, rows + cols - 2):
        stage = []
        for r in range(max(1, t + 1 - (cols - 1)), min(rows - 1, t) + 1):
            c = t + 1 - r
            red[r, c] = red[r - 1, c] ^ red[r, c - 1] ^ red[r - 1, c - 1]
            stage.append((r, c))
        stages.append(stage)
    board = Board(rows, cols, red)
    return (board, stages) if trace else board


def reconstruct_from(rows_given, cols_given, dims):
    """Rebuild a valid board from one full row and one full column.

    ``rows_given`` is ``(r, colors)`` with ``cols`` entries, ``cols_given``
    is ``(c, colors)`` with ``rows`` entries. Cells are filled by parity
    propagation outward from the cross in all four quadrants.
    """
    rows, cols = dims
    r0, row_vals = rows_given
    c0, col_vals = cols_given
    row_vals, col_vals = _red(row_vals), _red(col_vals)
    if row_vals.size != cols or col_vals.size != rows:
        raise ValueError("given row/column lengths do not match the board dimensions")
    if not (0 <= r0 < rows and 0 <= c0 < cols):
        raise ValueError("given row/column index outside the board")
    if row_vals[c0] != col_vals[r0]:
        raise ValueError("given row and column disagree at their intersection")
    red = np.zeros((rows, cols), dtype=bool)
    red[r0, :] = row_vals
    red[:, c0] = col_vals
    for dr in (1, -1):
        for dc in (1, -1):
            r = r0 + dr
            while 0 <= r < rows:
                c = c0 + dc
                while 0 <= c < cols:
                    red[r, c] = red[r - dr, c] ^ red[r, c - dc] ^ red[r - dr, c - dc]
                    c += dc
                r += dr
    return Board(rows, cols, red)


def free_cells(dims):
    rows, cols = dims
    return rows + cols - 1


def enumerate_boards(dims):
    """Every coloring of a ``rows x cols`` board as a bool array (2**(rows*cols) boards)."""
    rows, cols = dims
    cells = rows * cols
    if cells > 20:
        raise ValueError("brute-force enumeration is limited to 20 cells")
    idx = np.arange(1 << cells, dtype=np.int64)
    bits = (idx[:, None] >> np.arange(cells)) & 1
    return bits.reshape(-1, rows, cols).astype(bool)


def count_valid(dims, method="formula"):
    """Number of valid colorings: ``2 ** (rows + cols - 1)``."""
    rows, cols = dims
    if rows < 1 or cols < 1:
        raise ValueError("board dimensions must be positive")
    if method == "formula":
        if rows + cols - 1 > 24:
            raise ValueError("closed form limited to rows + cols - 1 <= 24")
        return 1 << (rows + cols - 1)
    if method == "brute":
        boards = enumerate_boards(dims)
        if rows == 1 or cols == 1:
            return boards.shape[0]
        red = boards.astype(np.uint8)
        par = (red[:, :-1, :-1] + red[:, 1:, :-1] + red[:, :-1, 1:] + red[:, 1:, 1:]) & 1
        return int(np.count_nonzero(~par.reshape(boards.shape[0], -1).any(axis=1)))
    raise ValueError(f"unknown counting method {method!r}")


def random_seed_colors(dims, seed):
    rows, cols = dims
    g = rng.generator(seed, "board.seed")
    bottom = g.integers(0, 2, size=cols).astype(bool)
    left = g.integers(0, 2, size=rows).astype(bool)
    left[0] = bottom[0]
    return bottom, left
