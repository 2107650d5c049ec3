from collections import Counter

from splice_forge.corpus import NAMED, CorpusConfig, corpus, generate, weight_sets
from splice_forge.diagram import canonical_form, validate


def test_weight_sets_are_coprime():
    from math import gcd

    for k in range(2, 5):
        for ws in weight_sets(k):
            assert len(ws) == k
            assert all(gcd(a, b) == 1 for i, a in enumerate(ws) for b in ws[i + 1 :])


def test_corpus_is_deterministic_and_valid():
    small = CorpusConfig(n_double=10, n_triple=10)
    a, b = generate(small), generate(small)
    assert [canonical_form(e.diagram) for e in a] == [canonical_form(e.diagram) for e in b]
    assert all(validate(e.diagram).ok for e in a)


def test_corpus_contents():
    entries = corpus()
    names = {e.name for e in entries}
    assert set(NAMED) <= names
    forms = [canonical_form(e.diagram) for e in entries]
    assert len(forms) == len(set(forms))
    sizes = Counter(len(e.diagram.nodes) for e in entries)
    assert sizes[1] > 0 and sizes[2] > 0 and sizes[3] > 0
    for e in entries:
        d = e.diagram
        assert all(1 <= abs(m) <= 3 for m in d.multiplicity.values())
        assert all(d.degree(v) <= 4 for v in d.nodes)
