"""The verification suites as a system: anchor discipline, failure
injection, budget handling, and determinism."""

import pytest

from versaldef import versal
from versaldef.groebner import Budget
from versaldef.report import FAIL, PASS, SKIPPED_BUDGET
from versaldef.verify import ANCHORS, DEFAULT_RANGES, SUITES, _run, run_suite


def test_anchor_registry_is_well_formed():
    assert ANCHORS
    for anchor, claim in ANCHORS.items():
        assert anchor and claim
        assert anchor == anchor.strip()


def test_every_anchor_is_cited_by_some_check():
    import inspect

    import versaldef.verify as verify_module

    src = inspect.getsource(verify_module)
    for anchor in ANCHORS:
        # once in the registry, at least once at a _run call site
        assert src.count(f'"{anchor}"') >= 2, f"anchor {anchor!r} never cited"


def test_claims_document_mirrors_registry():
    from pathlib import Path

    claims = Path(__file__).resolve().parent.parent / "CLAIMS.md"
    text = claims.read_text()
    for anchor in ANCHORS:
        assert f"`{anchor}`" in text, f"anchor {anchor!r} missing from CLAIMS.md"


def test_every_suite_has_a_default_range():
    assert set(DEFAULT_RANGES) == set(SUITES)
    for lo, hi in DEFAULT_RANGES.values():
        assert 4 <= lo <= hi


def test_run_rejects_unregistered_anchor():
    with pytest.raises(KeyError):
        _run([], "some-check", "not-an-anchor", lambda: (True, ""))


def test_run_suite_validation():
    with pytest.raises(KeyError):
        run_suite("nonsense")
    with pytest.raises(ValueError):
        run_suite("identities", (3, 4))
    with pytest.raises(ValueError):
        run_suite("identities", (5, 4))


@pytest.mark.parametrize(
    "name,n_range",
    [
        ("identities", (4, 4)),
        ("t1t2", (4, 4)),
        ("flatness", (4, 4)),
        ("smoothings", (4, 4)),
        ("monomial", (4, 4)),
        ("axes", (4, 4)),
        ("counts", (4, 4)),
        ("induction", (5, 5)),
        ("base-geometry", (5, 5)),
    ],
)
def test_suites_pass_at_smallest_range(name, n_range):
    rep = run_suite(name, n_range)
    assert rep.ok, [c for c in rep.checks if c.status != PASS]
    assert rep.checks
    ids = [c.id for c in rep.checks]
    assert len(ids) == len(set(ids))
    assert all(c.anchor in ANCHORS for c in rep.checks)


def test_injected_failure_is_reported_not_raised(monkeypatch):
    monkeypatch.setattr(versal, "phi_symmetry_failures", lambda n: [(1, 2, 3)])
    rep = run_suite("identities", (4, 4))
    by_id = {c.id: c for c in rep.checks}
    bad = by_id["phi-symmetry-n4"]
    assert bad.status == FAIL
    assert "(1, 2, 3)" in bad.details
    assert not rep.ok
    # the rest of the suite still ran
    assert by_id["cocycle-n4"].status == PASS


def test_injected_failure_details_are_truncated(monkeypatch):
    fails = [(i, i + 1, i + 2) for i in range(10)]
    monkeypatch.setattr(versal, "phi_symmetry_failures", lambda n: fails)
    rep = run_suite("identities", (4, 4))
    bad = next(c for c in rep.checks if c.id == "phi-symmetry-n4")
    assert "(+7 more)" in bad.details


def test_budget_exhaustion_reports_skip():
    tiny = Budget(max_pairs=1, max_terms=1)
    rep = run_suite("base-geometry", (5, 5), budget=tiny)
    statuses = {c.id: c.status for c in rep.checks}
    assert statuses["base-size-n5"] == PASS  # no Groebner work needed
    assert statuses["base-dimension-n5"] == SKIPPED_BUDGET
    assert statuses["base-multiplicity-n5"] == SKIPPED_BUDGET
    assert FAIL not in statuses.values()
    assert rep.ok  # skipped is not failed
    assert rep.summary["skipped"] >= 2


def test_seeded_run_is_deterministic_and_samples_extra_point():
    rep1 = run_suite("monomial", (4, 4), seed=7)
    rep2 = run_suite("monomial", (4, 4), seed=7)
    assert rep1.to_json() == rep2.to_json()
    fam = next(c for c in rep1.checks if c.id == "monomial-elliptic-n4")
    assert fam.status == PASS
    assert "[True, True, True]" in fam.details
    assert rep1.engine["seed"] == 7


def test_unseeded_runs_are_byte_identical():
    rep1 = run_suite("identities", (4, 4))
    rep2 = run_suite("identities", (4, 4))
    assert rep1.to_json() == rep2.to_json()
