"""Acceptance suite: every criterion at full size, exact arithmetic throughout.

Each test prints one PASS/FAIL line (visible even without ``-s``) and then
asserts, so a failing criterion is reported both ways.
"""

import time

import pytest

import criteria

CRITERIA = [
    ("1 smith normal form", criteria.criterion_snf),
    ("2 essentiality oracle", criteria.criterion_essentiality),
    ("3 complement certificates", criteria.criterion_complements),
    ("4 exactness chain", criteria.criterion_chain),
    ("5 spec-exact short => e-exact", criteria.criterion_short_spec),
    ("6 complement independence", criteria.criterion_independence),
    ("7 localization lemmas", criteria.criterion_localization),
    ("8 lemma harness", criteria.criterion_lemmas),
    ("9 no-functor demo", criteria.criterion_demo),
    ("10 radical properties", criteria.criterion_radicals),
    ("11 cli golden suite", criteria.criterion_cli),
]


@pytest.mark.parametrize("name,run", CRITERIA, ids=[c[0].split()[0] for c in CRITERIA])
def test_criterion(name, run, capsys):
    start = time.perf_counter()
    ok, detail = run()
    elapsed = time.perf_counter() - start
    with capsys.disabled():
        print("\n[%s] criterion %s: %s (%.1fs)" % ("PASS" if ok else "FAIL", name, detail, elapsed))
    assert ok, detail
