from __future__ import annotations

from reconalg.sweep import check_instance, jobs_from_env, sweep


def test_sweep_small_all_ok():
    results = sweep(12)
    assert [(r.n, r.q) for r in results][:3] == [(3, 2), (4, 3), (5, 3)]
    assert all(r.ok for r in results), [r.failures for r in results if not r.ok]


def test_instance_sections():
    r = check_instance(13, 8)
    assert r.case == "CaseA"
    for name in ("series", "arrow counts", "relations moduli", "relations symmetric", "group order", "invariants"):
        passed, total = r.sections[name]
        assert passed == total > 0
    assert r.max_terms >= 1


def test_invariants_toggle():
    r = check_instance(13, 8, invariants=False)
    assert "invariants" not in r.sections


def test_jobs_env(monkeypatch):
    monkeypatch.delenv("RECONALG_JOBS", raising=False)
    assert jobs_from_env() == 1
    monkeypatch.setenv("RECONALG_JOBS", "3")
    assert jobs_from_env() == 3
    monkeypatch.setenv("RECONALG_JOBS", "0")
    assert jobs_from_env() >= 1


def test_parallel_matches_serial():
    a = sweep(9, jobs=1, invariants=False)
    b = sweep(9, jobs=2, invariants=False)
    assert [(r.n, r.q, r.sections) for r in a] == [(r.n, r.q, r.sections) for r in b]
