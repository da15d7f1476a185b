import random

import pytest

from tileforge.compiler import compile_program
from tileforge.core import Assembly, TileType, Tileset, is_tau_stable
from tileforge.dsl import parse
from tileforge.geometry import Z2
from tileforge.simulator import (
    ConflictError,
    SimLimits,
    attachable,
    enumerate_producible,
    run_deterministic,
    run_exhaustive,
)


def compile_text(text):
    return compile_program(parse(text))


def _column():
    return compile_text("seed 0 0\nmoveN\nmoveN")


def test_attachable_empty_neighborhood():
    out = _column()
    assert attachable(out.seed.placements, out.tileset, (5, 5)) == set()


def test_attachable_above_seed():
    out = _column()
    assert attachable(out.seed.placements, out.tileset, (0, 1)) == {1}


def test_run_deterministic_column():
    out = _column()
    res = run_deterministic(out.tileset, out.seed)
    assert res.status == "terminal"
    assert res.assembly.placements == {(0, 0): 0, (0, 1): 1, (0, 2): 2}
    assert is_tau_stable(res.assembly, out.tileset)


def test_sequence_prefixes_are_stable_and_single_step():
    out = compile_text("seed 0 0\nmoveN\nmoveE\nfrom t_missing" if False else
                       "seed 0 0\nmoveN\nmoveE")
    res = run_deterministic(out.tileset, out.seed)
    placements = dict(out.seed.placements)
    for point, tid, parent in res.sequence:
        if parent is None:
            continue
        placements[point] = tid
        a = Assembly(placements=dict(placements), seed_points=out.seed.seed_points)
        assert is_tau_stable(a, out.tileset)


def test_growth_bonds_form_a_tree():
    out = compile_text("seed 0 0\nmoveN\ntile a\nmoveE\nfrom a\nmoveW")
    res = run_deterministic(out.tileset, out.seed)
    parents = [p for _pt, _t, p in res.sequence if p is not None]
    # each non-seed attachment has exactly one recorded parent
    assert len(parents) == len(res.assembly) - 1


def test_truncation_is_status_not_error():
    out = compile_text("seed 0 0\npump { moveN }")
    res = run_deterministic(
        out.tileset, out.seed, SimLimits(max_tiles=5), mode="permissive"
    )
    assert res.status == "truncated"
    assert len(res.assembly) == 5


def test_bbox_limit_truncates():
    out = compile_text("seed 0 0\npump { moveN }")
    res = run_deterministic(
        out.tileset,
        out.seed,
        SimLimits(max_tiles=100, bbox=((0, 0), (0, 3))),
        mode="permissive",
    )
    assert res.status == "truncated"
    assert max(y for _x, y in res.assembly.placements) == 3


def test_blocked_sites_stop_growth():
    out = _column()
    res = run_deterministic(
        out.tileset, out.seed, SimLimits(blocked=frozenset([(0, 1)]))
    )
    assert res.assembly.placements == {(0, 0): 0}


def test_strict_raises_on_ambiguity():
    # two different tiles bond the same seed glue northward
    tiles = [
        TileType(id=0, sides=(1, 0, 0, 0), name="σ"),
        TileType(id=1, sides=(0, 0, 1, 0)),
        TileType(id=2, sides=(2, 0, 1, 0)),
    ]
    ts = Tileset(geometry=Z2, tiles=tiles)
    seed = Assembly(placements={(0, 0): 0}, seed_points=frozenset([(0, 0)]))
    with pytest.raises(ConflictError) as err:
        run_deterministic(ts, seed)
    assert err.value.point == (0, 1)
    assert err.value.candidates == {1, 2}
    res = run_deterministic(ts, seed, mode="permissive")
    assert res.warnings and res.assembly.placements[(0, 1)] == 1
    res2 = run_deterministic(ts, seed, mode="permissive", tie_break=max)
    assert res2.assembly.placements[(0, 1)] == 2


def test_order_independence_on_conflict_free_system():
    out = compile_text(
        "seed 0 0\nmoveN\ntile a\nmoveE\nmoveN\nfrom a\nmoveW\nmoveN\nmoveN"
    )
    base = run_deterministic(out.tileset, out.seed).assembly.key()
    for s in range(20):
        rng = random.Random(s)
        res = run_deterministic(out.tileset, out.seed, rng=rng)
        assert res.assembly.key() == base


def test_default_limit_uses_env(monkeypatch):
    out = compile_text("seed 0 0\npump { moveN }")
    monkeypatch.setenv("TILEFORGE_MAX_TILES", "7")
    res = run_deterministic(out.tileset, out.seed, mode="permissive")
    assert res.status == "truncated" and len(res.assembly) == 7


def test_exhaustive_column_single_terminal():
    out = _column()
    terminals, complete = run_exhaustive(out.tileset, out.seed, SimLimits(max_tiles=10))
    assert complete and len(terminals) == 1
    (a,) = terminals
    assert a.placements == run_deterministic(out.tileset, out.seed).assembly.placements


def test_exhaustive_agrees_with_deterministic_on_conflict_free():
    out = compile_text("seed 0 0\nmoveN\nmoveE\nmoveS")
    terminals, complete = run_exhaustive(out.tileset, out.seed, SimLimits(max_tiles=16))
    det = run_deterministic(out.tileset, out.seed)
    assert complete and terminals == {det.assembly}


def test_exhaustive_terminal_assemblies_have_no_attachable_site():
    from tileforge.automata import fixture_regularity_gap

    ts, seed = fixture_regularity_gap()
    terminals, complete = run_exhaustive(ts, seed, SimLimits(max_tiles=12))
    assert terminals
    for a in terminals:
        for p in list(a.placements):
            for d in range(4):
                q = Z2.step(p, d)
                if q not in a.placements:
                    assert attachable(a.placements, ts, q) == set()


def test_enumerate_producible_counts_column():
    out = _column()
    prod = enumerate_producible(out.tileset, out.seed, max_tiles=10)
    assert len(prod) == 3  # seed, two-tile, full column


def test_eight_tile_fixture_terminals_match_enumerator():
    """Oracle: terminal shapes are (n, j, m, k) with the west row blocked by
    the initial column, i.e. m <= n and k == j."""
    from tileforge.automata import fixture_regularity_gap

    ts, seed = fixture_regularity_gap()
    bound = 30
    terminals, _complete = run_exhaustive(ts, seed, SimLimits(max_tiles=bound))

    expected = set()
    for n in range(0, bound):
        for j in range(0, bound):
            for m in range(0, n + 1):
                if 4 + n + j + m + j > bound:
                    continue
                placements = {(0, 0): 0}
                for i in range(1, n + 1):
                    placements[(0, i)] = 1
                placements[(0, n + 1)] = 2
                for i in range(1, j + 1):
                    placements[(i, n + 1)] = 3
                placements[(j + 1, n + 1)] = 4
                for i in range(1, m + 1):
                    placements[(j + 1, n + 1 - i)] = 5
                placements[(j + 1, n - m)] = 6
                for i in range(1, j + 1):
                    placements[(j + 1 - i, n - m)] = 7
                expected.add(frozenset(placements.items()))
    got = {a.key() for a in terminals}
    assert got == expected
