import pytest

from logictree.taxonomy import (
    RelationType,
    TaxonomyError,
    load_taxonomy,
    longest_match,
    parse_taxonomy_text,
)


def enumeration_oracle(tokens, start, taxonomy):
    """Brute-force: scan every phrase for a match at `start`, keep the longest."""
    best = None
    lowered = [t.lower() for t in tokens]
    for relation, phrase in taxonomy.all_phrases():
        if tuple(lowered[start : start + len(phrase)]) == phrase:
            if best is None or len(phrase) > len(best[1]):
                best = (relation, phrase)
    return best


def test_builtin_has_ten_relations(taxonomy):
    assert set(taxonomy.entries) == set(RelationType)
    assert len(taxonomy.entries) == 10


def test_builtin_spot_checks(taxonomy):
    assert taxonomy.relation_of(("likewise",)) is RelationType.ANALOGY
    assert taxonomy.relation_of(("therefore",)) is RelationType.CAUSAL
    assert taxonomy.relation_of(("cause",)) is RelationType.CAUSAL
    assert taxonomy.relation_of(("even", "when")) is RelationType.CONCESSION
    assert taxonomy.relation_of(("only", "if")) is RelationType.CONDITION
    assert taxonomy.relation_of(("n't",)) is RelationType.CONTRAST
    assert taxonomy.relation_of(("as", "soon", "as")) is RelationType.TEMPORAL


def test_load_is_deterministic():
    first = load_taxonomy()
    second = load_taxonomy()
    assert first.entries == second.entries


def test_duplicate_phrase_across_relations_rejected():
    text = "conjunction: and\ncausal: and | because\n"
    with pytest.raises(TaxonomyError) as excinfo:
        parse_taxonomy_text(text)
    message = str(excinfo.value)
    assert "conjunction" in message and "causal" in message


def test_unknown_relation_name_rejected():
    with pytest.raises(TaxonomyError, match="unknown relation"):
        parse_taxonomy_text("sarcasm: yeah right\n")


def test_file_override(tmp_path):
    path = tmp_path / "tiny.txt"
    path.write_text("causal: because\ncontrast: but\n", "utf-8")
    taxonomy = load_taxonomy(path)
    assert set(taxonomy.entries) == {RelationType.CAUSAL, RelationType.CONTRAST}


def test_longest_match_not_only():
    taxonomy = load_taxonomy()
    match = longest_match(["not", "only", "that"], 0, taxonomy)
    assert match == (RelationType.RESTATEMENT, "not only", 2)


def test_longest_match_absent():
    taxonomy = load_taxonomy()
    assert longest_match(["banana"], 0, taxonomy) is None


def test_longest_match_even_when():
    taxonomy = load_taxonomy()
    match = longest_match(["even", "when"], 0, taxonomy)
    assert match == (RelationType.CONCESSION, "even when", 2)


def test_longest_match_start_out_of_range():
    taxonomy = load_taxonomy()
    with pytest.raises(ValueError):
        longest_match(["and"], 1, taxonomy)


def test_every_phrase_matches_itself(taxonomy):
    for relation, phrase in taxonomy.all_phrases():
        match = longest_match(list(phrase), 0, taxonomy)
        assert match is not None
        assert match.length >= len(phrase)
        if match.length == len(phrase):
            assert match.relation is relation


# Sequences where a shorter phrase is a prefix of a longer one at position 0
# (several cross relation boundaries). Expected values were derived with
# enumeration_oracle and frozen here; the oracle is re-run as a cross-check.
ADVERSARIAL = [
    (["not", "only", "here"], RelationType.RESTATEMENT, "not only"),
    (["not", "here"], RelationType.CONTRAST, "not"),
    (["no", "matter", "what"], RelationType.CONCESSION, "no matter"),
    (["no", "dogs"], RelationType.CONTRAST, "no"),
    (["as", "well", "as", "cats"], RelationType.CONJUNCTION, "as well as"),
    (["as", "well", "said"], RelationType.CONJUNCTION, "as well"),
    (["as", "a", "result", "cats"], RelationType.CAUSAL, "as a result"),
    (["as", "soon", "as", "possible"], RelationType.TEMPORAL, "as soon as"),
    (["as", "long", "as", "dogs"], RelationType.CONDITION, "as long as"),
    (["as", "if", "dogs"], RelationType.ANALOGY, "as if"),
    (["for", "example", "dogs"], RelationType.INSTANTIATION, "for example"),
    (["for", "instance"], RelationType.INSTANTIATION, "for instance"),
    (["for", "one", "thing"], RelationType.INSTANTIATION, "for one thing"),
    (["for", "dogs"], RelationType.CAUSAL, "for"),
    (["rather", "than", "cats"], RelationType.CONTRAST, "rather than"),
    (["rather", "odd"], RelationType.CONTRAST, "rather"),
    (["regardless", "of", "cats"], RelationType.CONCESSION, "regardless of"),
    (["despite", "of", "cats"], RelationType.CONCESSION, "despite of"),
    (["in", "the", "end", "dogs"], RelationType.RESTATEMENT, "in the end"),
    (["only", "if", "dogs"], RelationType.CONDITION, "only if"),
]


@pytest.mark.parametrize("tokens,relation,phrase", ADVERSARIAL)
def test_longest_match_adversarial(taxonomy, tokens, relation, phrase):
    match = longest_match(tokens, 0, taxonomy)
    assert match is not None
    assert (match.relation, match.phrase) == (relation, phrase)
    oracle = enumeration_oracle(tokens, 0, taxonomy)
    assert oracle is not None
    assert match.relation is oracle[0]
    assert match.phrase == " ".join(oracle[1])


def test_prefix_phrases_never_shadow_longer(taxonomy):
    # every single-token phrase that prefixes a multi-token phrase loses to it
    singles = {p[0] for _, p in taxonomy.all_phrases() if len(p) == 1}
    checked = 0
    for relation, phrase in taxonomy.all_phrases():
        if len(phrase) > 1 and phrase[0] in singles:
            match = longest_match(list(phrase), 0, taxonomy)
            assert match is not None
            assert match.length == len(phrase)
            assert match.relation is relation
            checked += 1
    assert checked > 0
