"""Benchmark runner rows and the bounded-oracle check suite, including
a mutant negative control."""

from __future__ import annotations

import csv

import pytest

from dlreason.absorption import (
    Absorption,
    _build_tu,
    absorb,
    absorb_clause,
    distribute,
    make_clause,
)
from dlreason.bench import (
    CSV_HEADER,
    BenchError,
    BenchSpec,
    CheckBudget,
    check_repair,
    run_bench,
    run_check_suite,
    write_csv,
)
from dlreason.concepts import Not


class TestBenchRows:
    def test_cyclic_sweep_row_shape(self):
        spec = BenchSpec("cyclic", sizes=(0, 1), modes=("basic", "enhanced"),
                         timeout_ms=20_000)
        rows = run_bench(spec)
        assert len(rows) == 4
        for row in rows:
            assert set(row) == set(CSV_HEADER)
            assert row["verdict"] == "ok"
            assert row["wall_ms"] >= 0
        by_key = {(r["size"], r["mode"]): r for r in rows}
        assert by_key[(1, "basic")]["tg_residual"] == 1
        assert by_key[(1, "enhanced")]["tg_residual"] == 0

    def test_timeout_row(self):
        spec = BenchSpec("galen", sizes=(4,), modes=("basic",),
                         timeout_ms=1, galen_defs=12)
        rows = run_bench(spec)
        assert rows[0]["wall_ms"] == "TIMEOUT"
        assert rows[0]["verdict"] == "timeout"

    def test_write_csv(self, tmp_path):
        spec = BenchSpec("galen", sizes=(0,), modes=("basic",),
                         galen_defs=4, timeout_ms=20_000)
        path = tmp_path / "rows.csv"
        write_csv(run_bench(spec), str(path))
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == list(CSV_HEADER)
        assert len(rows) == 2


class TestCheckSuite:
    def test_small_budget_passes(self):
        report = run_check_suite(CheckBudget(instances=12, seed=3))
        assert report.ok, report.format()
        assert "OK" in report.format()

    def test_mutant_absorber_is_caught(self):
        # an absorber that skips the phase-1 requirement that an atomic
        # inclusion's atom be undefined: clashes between a definition and
        # an inclusion on the same atom go unnoticed
        def mutant(t, mode="basic", fuel=10_000):
            if mode == "none":
                return absorb(t, mode, fuel)
            d = distribute(t, mode)
            broken_tinc = list(d.tinc)
            dropped = []
            for (sub_ax, idx) in d.residual:
                # misroute every residual atomic inclusion straight into
                # the unfolding table, ignoring prior definitions
                from dlreason.concepts import Atom as _Atom, Sub as _Sub

                if isinstance(sub_ax, _Sub) and isinstance(sub_ax.lhs, _Atom):
                    dropped.append(sub_ax)
                else:
                    g = make_clause([Not(sub_ax.lhs), sub_ax.rhs])
                    out = absorb_clause(g, d.tprim, broken_tinc, fuel)
                    from dlreason.absorption import Absorbed as _Absorbed

                    if isinstance(out, _Absorbed):
                        broken_tinc.append(out.inclusion)
            # the dropped inclusions simply vanish from the result
            return Absorption(_build_tu(d.tprim, broken_tinc), ())

        report = run_check_suite(CheckBudget(instances=40, seed=0),
                                 absorber=mutant)
        assert not report.ok

    def test_repair_property_standalone(self):
        res = check_repair(8, 8, seed=1)
        assert res.ok, res.failures


class TestAgreementPrecheck:
    def test_disagreeing_modes_raise(self):
        from dlreason.concepts import Atom, Sub, tbox
        from dlreason import bench

        t = tbox([Sub(Atom("A"), Atom("B"))])

        real = bench.check_sat

        def fake(c, a, cfg):
            res = real(c, a, cfg)
            if a.tu.entries:  # only the absorbing modes see entries here
                return res
            from dlreason.tableau import SatResult, Stats, VERDICT_UNSAT

            return SatResult(VERDICT_UNSAT, Stats())

        bench.check_sat = fake
        try:
            with pytest.raises(BenchError):
                run_bench(BenchSpec("cyclic", sizes=(1,),
                                    modes=("none", "basic")))
        finally:
            bench.check_sat = real
