import random

import pytest
from hypothesis import given, settings, strategies as st

from tileforge.analysis import (
    AnalysisError,
    Path,
    PumpWitness,
    bond_path_to,
    efficiency_report,
    expand_partial_pump,
    extract_paths,
    find_caves,
    find_partial_pumps,
    manhattan_diameter,
    manhattan_diameter_bruteforce,
    manhattan_radius,
    monotone_pump_check,
    verify_pump_witness,
)
from tileforge.compiler import compile_program
from tileforge.core import Assembly
from tileforge.dsl import parse
from tileforge.simulator import SimLimits, run_deterministic


def assembly_of(points):
    return Assembly(
        placements={p: 0 for p in points}, seed_points=frozenset([points[0]])
    )


def test_diameter_single_tile():
    assert manhattan_diameter(assembly_of([(0, 0)])) == 0


def test_diameter_formula():
    assert manhattan_diameter(assembly_of([(0, 0), (3, 4)])) == 7


@settings(max_examples=100, deadline=None)
@given(
    st.sets(
        st.tuples(st.integers(-60, 60), st.integers(-60, 60)),
        min_size=1,
        max_size=200,
    )
)
def test_diameter_matches_bruteforce(points):
    a = assembly_of(sorted(points))
    assert manhattan_diameter(a) == manhattan_diameter_bruteforce(a)


def test_radius_single_and_column():
    assert manhattan_radius(assembly_of([(0, 0)])) == 0
    assert manhattan_radius(assembly_of([(0, 0), (0, 1), (0, 2)])) == 2


def test_radius_needs_seed_in_assembly():
    a = Assembly(placements={(0, 0): 0}, seed_points=frozenset([(0, 0)]))
    with pytest.raises(AnalysisError):
        manhattan_radius(a, (5, 5))


def test_extract_paths_column():
    out = compile_program(parse("seed 0 0\nmoveN\nmoveN"))
    res = run_deterministic(out.tileset, out.seed)
    tree = extract_paths(res.assembly, res.sequence)
    paths = tree.leaf_paths(res.assembly)
    assert len(paths) == 1
    assert paths[0].points == [(0, 0), (0, 1), (0, 2)]


def test_extract_paths_branching():
    out = compile_program(parse("seed 0 0\nmoveN\ntile a\nmoveE\nfrom a\nmoveW"))
    res = run_deterministic(out.tileset, out.seed)
    tree = extract_paths(res.assembly, res.sequence)
    assert len(tree.leaf_paths(res.assembly)) == 2
    assert tree.branch_points() == [(0, 1)]


def test_extract_paths_gen_eff_branch_structure():
    # the four glue re-bindings induce the side branches of the growth tree
    from tileforge.constructions import gen_eff

    out = compile_program(gen_eff(3))
    res = run_deterministic(out.tileset, out.seed, SimLimits(max_tiles=30000))
    tree = extract_paths(res.assembly, res.sequence)
    assert len(tree.leaf_paths(res.assembly)) == 4
    assert len(tree.branch_points()) == 3
    longest = tree.longest_path(res.assembly)
    assert all(p in res.assembly.placements for p in longest.points)


# ---------------------------------------------------------------------------
# caves
# ---------------------------------------------------------------------------


def _path_from_moves(moves, tiles=None):
    pts = [(0, 0)]
    offs = {"N": (0, 1), "E": (1, 0), "S": (0, -1), "W": (-1, 0)}
    for m in moves:
        dx, dy = offs[m]
        pts.append((pts[-1][0] + dx, pts[-1][1] + dy))
    return Path(pts, tiles if tiles is not None else list(range(len(pts))))


def test_caves_monotone_staircase_empty():
    p = _path_from_moves("NNENNENNE")
    assert find_caves(p, "vertical") == []


def test_caves_u_shape():
    p = _path_from_moves("SEN")  # down, right, up: one vertical cave
    assert find_caves(p, "vertical") == [(0, 3)]


def test_caves_conditions_hold():
    rng = random.Random(1)
    for _ in range(50):
        moves = "".join(rng.choice("NESW") for _ in range(14))
        pts = [(0, 0)]
        offs = {"N": (0, 1), "E": (1, 0), "S": (0, -1), "W": (-1, 0)}
        ok = True
        for m in moves:
            dx, dy = offs[m]
            nxt = (pts[-1][0] + dx, pts[-1][1] + dy)
            if nxt in pts:
                ok = False
                break
            pts.append(nxt)
        if not ok:
            continue
        p = Path(pts, list(range(len(pts))))
        for i, j in find_caves(p, "vertical"):
            ys = [q[1] for q in pts]
            assert ys[i] == ys[j]
            assert all(ys[k] <= ys[i] for k in range(i))
            assert all(ys[k] < ys[i] for k in range(i + 1, j))


def test_caves_horizontal_variant():
    p = _path_from_moves("WNE")  # west, up, east: a horizontal cave
    assert find_caves(p, "horizontal") == [(0, 3)]


@pytest.mark.parametrize("n", [0, 3])
def test_gen_eff_main_path_cave_count(n):
    # the longest growth path dips below a prefix maximum and returns twice:
    # once through the authored cave, closed by the first repeated column,
    # and once inside the repeated ladder that tops the assembly
    from tileforge.constructions import gen_eff

    out = compile_program(gen_eff(n))
    res = run_deterministic(out.tileset, out.seed, SimLimits(max_tiles=30000))
    tree = extract_paths(res.assembly, res.sequence)
    main = tree.longest_path(res.assembly)
    caves = find_caves(main, "vertical")
    assert len(caves) == 2
    ys = [p[1] for p in main.points]
    for i, j in caves:
        assert ys[i] == ys[j]
        assert all(ys[k] < ys[i] for k in range(i + 1, j))


# ---------------------------------------------------------------------------
# pumping
# ---------------------------------------------------------------------------


def test_monotone_pump_periodic_line():
    tiles = [10, 11] * 5
    p = _path_from_moves("E" * 9, tiles)
    w = monotone_pump_check(p)
    assert w == PumpWitness(0, 2)
    assert verify_pump_witness(p, w)


def test_monotone_pump_distinct_types_none():
    p = _path_from_moves("E" * 9)
    assert monotone_pump_check(p) is None


def test_monotone_pump_needs_monotonicity():
    tiles = [5, 6, 7, 5, 6, 7, 5]
    p = _path_from_moves("ENWWNE"[:6], tiles)
    assert monotone_pump_check(p) is None


def test_gen_eff_main_path_not_monotone_pumpable():
    from tileforge.constructions import gen_eff

    out = compile_program(gen_eff(0))
    res = run_deterministic(out.tileset, out.seed, SimLimits(max_tiles=10000))
    tree = extract_paths(res.assembly, res.sequence)
    main = tree.longest_path(res.assembly)
    assert monotone_pump_check(main) is None


def test_partial_pumps_staircase():
    tiles = ([10, 11, 12] * 5) + [10]
    p = _path_from_moves("NNE" * 5, tiles)
    runs = find_partial_pumps(p, min_reps=3)
    assert runs == [(0, 3, 5)]
    assert expand_partial_pump(p, runs[0])


def test_partial_pumps_distinct_types_empty():
    p = _path_from_moves("NNE" * 5)
    assert find_partial_pumps(p, min_reps=2) == []


def test_partial_pumps_min_reps_validation():
    p = _path_from_moves("NN")
    with pytest.raises(AnalysisError):
        find_partial_pumps(p, min_reps=1)


def test_partial_pumps_counts_blocked_tail():
    # two full copies then a truncated third: reported as 3 repetitions
    tiles = [7, 8, 9, 7, 8, 9, 7, 8, 9]
    p = _path_from_moves("NNE" * 3, tiles)
    runs = find_partial_pumps(p, min_reps=3)
    assert (0, 3, 3) in runs


# ---------------------------------------------------------------------------
# efficiency report
# ---------------------------------------------------------------------------


def test_efficiency_column_not_efficient():
    out = compile_program(parse("seed 0 0\nmoveN\nmoveN"))
    res = run_deterministic(out.tileset, out.seed)
    rep = efficiency_report(out.tileset, out.seed, [res.assembly])
    assert rep.tile_types == 3 and rep.diameter == 2
    assert not rep.efficient


def test_efficiency_gen_eff17():
    from tileforge.constructions import gen_eff

    out = compile_program(gen_eff(17))
    res = run_deterministic(out.tileset, out.seed, SimLimits(max_tiles=20000))
    rep = efficiency_report(out.tileset, out.seed, [res.assembly])
    assert rep.tile_types == 106
    assert rep.y_extent == 112
    assert rep.efficient
    assert rep.diameter > 106 + 1


def test_report_json_fields():
    out = compile_program(parse("seed 0 0\nmoveN"))
    res = run_deterministic(out.tileset, out.seed)
    rep = efficiency_report(out.tileset, out.seed, [res.assembly])
    import json

    doc = json.loads(rep.to_json())
    for field in ("tile_types", "seed_size", "diameter", "radius",
                  "x_extent", "y_extent", "efficient"):
        assert field in doc


def test_bond_path_to():
    out = compile_program(parse("seed 0 0\nmoveN\nmoveE"))
    res = run_deterministic(out.tileset, out.seed)
    p = bond_path_to(res.assembly, out.tileset, (1, 1))
    assert p.points == [(0, 0), (0, 1), (1, 1)]
