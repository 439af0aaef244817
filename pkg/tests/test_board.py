import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nisqwalsh.board import (
    Board,
    Color,
    complete_from_seed,
    count_valid,
    enumerate_boards,
    free_cells,
    random_seed_colors,
    reconstruct_from,
    validate,
    window_parities,
)


def brute_valid(rows, cols):
    """All valid boards by checking every window of every coloring."""
    out = []
    for bits in itertools.product([False, True], repeat=rows * cols):
        red = np.array(bits).reshape(rows, cols)
        v = red.astype(int)
        ok = all(
            (v[r, c] + v[r + 1, c] + v[r, c + 1] + v[r + 1, c + 1]) % 2 == 0
            for r in range(rows - 1)
            for c in range(cols - 1)
        )
        if ok:
            out.append(red)
    return out


def test_two_by_two_forced_corner():
    b = complete_from_seed([Color.RED, Color.BLUE], [Color.RED, Color.BLUE])
    assert b.cell(1, 1) is Color.RED
    assert validate(b)


def test_all_blue_seed():
    b = complete_from_seed("BBBBB", "BBBB")
    assert not b.red.any()
    assert validate(b)


def test_seven_by_nine(rng):
    for seed in range(10):
        bottom, left = random_seed_colors((7, 9), seed)
        b = complete_from_seed(bottom, left)
        assert (b.rows, b.cols) == (7, 9)
        assert validate(b)
    assert free_cells((7, 9)) == 15
    assert count_valid((7, 9)) == 32768


def test_corner_mismatch():
    with pytest.raises(ValueError):
        complete_from_seed("RB", "BR")


def test_validate_single_red():
    assert validate(Board(2, 2, np.zeros((2, 2), bool)))
    red = np.zeros((2, 2), bool)
    red[1, 0] = True
    assert not validate(Board(2, 2, red))


def test_seed_bijection_three_by_three():
    seen = set()
    for bits in itertools.product([False, True], repeat=5):
        bottom = bits[:3]
        left = (bits[0],) + bits[3:]
        b = complete_from_seed(bottom, left)
        assert validate(b)
        assert list(b.red[0]) == list(bottom) and list(b.red[:, 0]) == list(left)
        seen.add(b.red.tobytes())
    valid = brute_valid(3, 3)
    assert len(seen) == 32 == len(valid)
    assert seen == {v.tobytes() for v in valid}


@pytest.mark.parametrize("dims", [(1, 1), (1, 4), (2, 2), (2, 3), (3, 3), (3, 4), (4, 4)])
def test_count_matches_brute(dims):
    assert count_valid(dims, "brute") == len(brute_valid(*dims)) == count_valid(dims)


def test_count_errors():
    with pytest.raises(ValueError):
        count_valid((5, 5), "brute")
    with pytest.raises(ValueError):
        count_valid((13, 13))
    with pytest.raises(ValueError):
        count_valid((2, 2), "guess")


def test_enumerate_boards_shape():
    boards = enumerate_boards((2, 3))
    assert boards.shape == (64, 2, 3)
    assert len({b.tobytes() for b in boards}) == 64


def test_uniqueness_up_to_sixteen_cells():
    for dims in [(2, 8), (4, 4), (2, 5)]:
        valid = brute_valid(*dims) if dims[0] * dims[1] <= 12 else None
        rows, cols = dims
        completions = set()
        for bits in itertools.product([False, True], repeat=rows + cols - 1):
            bottom, left = bits[:cols], (bits[0],) + bits[cols:]
            completions.add(complete_from_seed(bottom, left).red.tobytes())
        assert len(completions) == count_valid(dims, "brute")
        if valid is not None:
            assert completions == {v.tobytes() for v in valid}


@pytest.mark.parametrize("dims", [(3, 3), (3, 4)])
def test_reconstruct_round_trip_exhaustive(dims):
    rows, cols = dims
    for red in brute_valid(rows, cols):
        b = Board(rows, cols, red)
        for r in range(rows):
            for c in range(cols):
                got = reconstruct_from((r, red[r]), (c, red[:, c]), dims)
                assert got == b


def test_reconstruct_bottom_left_matches_completion():
    bottom, left = random_seed_colors((5, 6), 3)
    a = complete_from_seed(bottom, left)
    assert reconstruct_from((0, bottom), (0, left), (5, 6)) == a


def test_reconstruct_third_row_second_from_right():
    bottom, left = random_seed_colors((7, 9), 11)
    b = complete_from_seed(bottom, left)
    got = reconstruct_from((2, b.red[2]), (7, b.red[:, 7]), (7, 9))
    assert got == b


def test_reconstruct_mismatch():
    with pytest.raises(ValueError):
        reconstruct_from((0, "RBB"), (0, "BBB"), (3, 3))
    with pytest.raises(ValueError):
        reconstruct_from((0, "RB"), (0, "RBB"), (3, 3))


def test_trace_stages_cover_board():
    b, stages = complete_from_seed("RBRB", "RRB", trace=True)
    cells = [cell for s in stages for cell in s]
    assert sorted(cells) == [(r, c) for r in range(3) for c in range(4)]
    for t, stage in enumerate(stages[1:], start=1):
        assert all(r + c - 1 == t for r, c in stage)


def test_text_round_trip():
    b = complete_from_seed("RBBR", "RBR")
    text = b.to_text()
    lines = text.splitlines()
    assert lines[-1] == "RBBR"
    assert [ln[0] for ln in reversed(lines)] == list("RBR")
    assert Board.from_text(text) == b


@pytest.mark.parametrize("text", ["", "RB\nR\n", "RX\nBB\n"])
def test_text_errors(text):
    with pytest.raises(ValueError):
        Board.from_text(text)


def test_board_bounds():
    with pytest.raises(ValueError):
        Board(0, 3, np.zeros((0, 3), bool))
    with pytest.raises(ValueError):
        Board(65, 1, np.zeros((65, 1), bool))
    with pytest.raises(ValueError):
        Board(2, 2, np.zeros((3, 2), bool))


@settings(max_examples=60, deadline=None)
@given(
    st.integers(1, 12),
    st.integers(1, 12),
    st.integers(0, 2**31),
)
def test_completion_always_valid(rows, cols, seed):
    bottom, left = random_seed_colors((rows, cols), seed)
    b = complete_from_seed(bottom, left)
    assert validate(b)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 8), st.integers(2, 8), st.integers(0, 2**31), st.data())
def test_window_parity_order_free(rows, cols, seed, data):
    g = np.random.default_rng(seed)
    red = g.random((rows, cols)) < 0.5
    par = window_parities(red)
    order = data.draw(st.permutations([(r, c) for r in range(rows - 1) for c in range(cols - 1)]))
    for r, c in order:
        assert par[r, c] == (red[r:r + 2, c:c + 2].sum() & 1)
