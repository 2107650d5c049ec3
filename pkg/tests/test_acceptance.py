"""Acceptance criteria 1-8 on the generated corpus.

Each test prints one ``PASS``/``FAIL`` line (also collected in the terminal
summary).  Criterion 4 bundles two statements; its second half, that every
induced multiplicity of an all-positive diagram is strictly positive, is false
whenever the far side of an edge carries no arrowhead (the induced component
is then empty, multiplicity 0).  That half is kept verbatim and marked as an
expected failure; the corrected statement is tested separately.
"""

import pytest

import acceptance as A
from conftest import ACCEPTANCE_LINES
from splice_forge.calculus import induced_multiplicity


def _report(k):
    name, fn = A.CRITERIA[k]
    ok, detail = fn()
    line = f"criterion {k} ({name}): {'PASS' if ok else 'FAIL'} -- {detail}"
    print(line)
    ACCEPTANCE_LINES[k] = line
    return ok, detail


@pytest.mark.parametrize("k", [1, 2, 3, 5, 6, 7, 8])
def test_criterion(k):
    ok, detail = _report(k)
    assert ok, detail


@pytest.mark.xfail(strict=True, reason="arrowless far sides induce empty components (multiplicity 0)")
def test_criterion_4():
    ok, detail = _report(4)
    assert ok, detail


def test_criterion_4_per_piece_half():
    bad = []
    for e in A._fibered():
        d = e.diagram
        whole = A.decide_tight(d, assume_s3=True).tight
        if whole != all(p.tight for p in A.per_piece(d)):
            bad.append(e.name)
    assert not bad


def test_criterion_4_induced_positive_iff_far_side_has_arrows():
    bad = []
    for e in A._entries():
        d = e.diagram
        if not A._all_positive(d):
            continue
        for u, v in d.inner_edges():
            for p, q in ((u, v), (v, u)):
                m = induced_multiplicity(d, (p, q), "left")
                if m < 0 or (m > 0) != A._far_has_arrow(d, p, q):
                    bad.append((e.name, p, q, m))
    assert not bad
