import csv
import math

import numpy as np
import pytest

import paulisynth as ps
from paulisynth import bench
from paulisynth.paulis import Pauli


def test_random_polynomial_deterministic():
    spec = ps.RandomSpec(4, 12, seed=42)
    assert ps.random_polynomial(spec) == ps.random_polynomial(spec)
    other = ps.RandomSpec(4, 12, seed=43)
    assert ps.random_polynomial(spec) != ps.random_polynomial(other)


def test_random_polynomial_single_qubit_always_single_leg():
    poly = ps.random_polynomial(ps.RandomSpec(1, 50, seed=3))
    assert all(len(g.string.legs()) == 1 for g in poly.gadgets)


def test_random_polynomial_shape_and_angles():
    spec = ps.RandomSpec(5, 40, seed=9)
    poly = ps.random_polynomial(spec)
    assert poly.num_qubits == 5 and len(poly) == 40
    for g in poly.gadgets:
        assert 1 <= len(g.string.legs()) <= 5
        assert g.angle in spec.angle_set


def test_letter_frequencies_chi_square():
    poly = ps.random_polynomial(ps.RandomSpec(6, 3000, seed=17))
    counts = {Pauli.X: 0, Pauli.Y: 0, Pauli.Z: 0}
    for g in poly.gadgets:
        for p in g.string.letters:
            if p != Pauli.I:
                counts[p] += 1
    total = sum(counts.values())
    assert total >= 10_000
    expected = total / 3
    chi2 = sum((c - expected) ** 2 / expected for c in counts.values())
    # df=2 critical value at p=0.001
    assert chi2 < 13.816


def test_leg_count_roughly_uniform():
    q = 4
    poly = ps.random_polynomial(ps.RandomSpec(q, 4000, seed=23))
    counts = [0] * (q + 1)
    for g in poly.gadgets:
        counts[len(g.string.legs())] += 1
    assert counts[0] == 0
    expected = 1000
    chi2 = sum((c - expected) ** 2 / expected for c in counts[1:])
    assert chi2 < 16.27  # df=3, p=0.001


def test_random_spec_validation():
    with pytest.raises(ValueError):
        ps.RandomSpec(0, 5)
    with pytest.raises(ValueError):
        ps.RandomSpec(3, 5, angle_set=())


def test_instance_seed_deterministic():
    assert ps.instance_seed(1, 2, 3) == ps.instance_seed(1, 2, 3)
    assert ps.instance_seed(1, 2, 3) != ps.instance_seed(1, 2, 4)


def test_run_benchmark_row_counts_and_consistency(tmp_path):
    out = tmp_path / "rows.csv"
    rows = bench.run_benchmark(["naive", "proposed"], ["complete:4", "line:4"],
                               [5, 10], repeats=2, out_csv=str(out), base_seed=5)
    assert len(rows) == 2 * 2 * 2 * 2
    # metrics recompute identically from the (seed, config)-determined circuit
    for row in rows[:6]:
        topo = ps.Topology.from_spec(row.topology)
        poly = ps.random_polynomial(ps.RandomSpec(row.q, row.n, seed=row.seed))
        res = bench.run_method(row.method, poly, topo)
        assert (res.metrics.cnot_count, res.metrics.depth,
                res.metrics.two_qubit_depth) == (row.cnots, row.depth, row.cnot_depth)
    text = out.read_text()
    assert text.startswith("# paulisynth benchmark rng=numpy-PCG64")
    with open(out) as f:
        reader = csv.reader(line for line in f if not line.startswith("#"))
        header = next(reader)
        assert tuple(header) == bench.CSV_COLUMNS
        assert len(list(reader)) == len(rows)


def test_run_benchmark_rows_deterministic_modulo_walltime(tmp_path):
    kwargs = dict(methods=["proposed"], topologies=["line:3"], sizes=[6],
                  repeats=2, out_csv=None, base_seed=11)
    a = bench.run_benchmark(**kwargs)
    b = bench.run_benchmark(**kwargs)
    strip = lambda r: (r.method, r.topology, r.q, r.n, r.seed, r.cnots, r.depth,
                       r.cnot_depth)
    assert [strip(r) for r in a] == [strip(r) for r in b]


def test_run_benchmark_input_validation(tmp_path):
    with pytest.raises(ValueError, match="method"):
        bench.run_benchmark([], ["line:3"], [5], 1, None)
    with pytest.raises(ValueError, match="unknown method"):
        bench.run_benchmark(["bogus"], ["line:3"], [5], 1, None)
    with pytest.raises(ValueError):
        bench.run_benchmark(["naive"], [], [5], 1, None)


def test_run_method_unknown():
    poly = ps.random_polynomial(ps.RandomSpec(2, 2, seed=1))
    with pytest.raises(ValueError, match="unknown method"):
        bench.run_method("fancy", poly, ps.Topology.line(2))


def test_trotter_error_zero_timestep_and_commuting(tmp_path):
    # commuting-only polynomial: |overlap| = 1 at every timestep for all methods
    gadgets = tuple(ps.PauliGadget(a, ps.PauliString.from_str(s))
                    for a, s in ((0.1, "ZZI"), (0.2, "IZZ"), (0.3, "ZIZ")))
    poly = ps.PauliPolynomial(3, gadgets)
    out = tmp_path / "trot.csv"
    ts = bench.default_timesteps(5)
    rows = bench.run_trotter_error([poly], ps.Topology.complete(3),
                                   ["naive", "proposed"], ts, str(out))
    assert len(rows) == 2 * 5
    for _method, _idx, t, ov in rows:
        assert abs(ov - 1.0) < 1e-9
    header = out.read_text().splitlines()[1]
    assert header == "method,instance,timestep,overlap_abs"


def test_trotter_timesteps_span():
    ts = bench.default_timesteps(17)
    assert len(ts) == 17
    assert ts[0] == 0.0
    assert abs(ts[-1] - 2 * math.pi) < 1e-12


def test_trotter_error_repetitions_reduce_error():
    poly = ps.random_polynomial(ps.RandomSpec(3, 12, ps.SMALL_ANGLE_SET, seed=5))
    topo = ps.Topology.complete(3)
    t = 2.0
    errs = []
    for r in (1, 4):
        rows = bench.run_trotter_error([poly], topo, ["proposed"], [t], None,
                                       repetitions=r)
        errs.append(1.0 - rows[0][3])
    assert errs[1] <= errs[0] + 1e-12


def test_benchmark_jobs_parallel_matches_serial(tmp_path):
    kwargs = dict(methods=["naive"], topologies=["line:3"], sizes=[4],
                  repeats=2, out_csv=None, base_seed=3)
    serial = bench.run_benchmark(**kwargs)
    parallel = bench.run_benchmark(jobs=2, **kwargs)
    strip = lambda r: (r.method, r.seed, r.cnots, r.depth, r.cnot_depth)
    assert [strip(r) for r in serial] == [strip(r) for r in parallel]
