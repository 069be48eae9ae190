import pytest

from gradedwl import InputFormatError, KripkeModel, Vocabulary, check, parse, run
from gradedwl.formats import (
    AUTOMATON_HEADER,
    MODEL_HEADER,
    parse_automaton,
    parse_model,
    serialize_model,
)

from conftest import V1, pointed


MODEL_DOC = """gradedwl-model v1
# a 2-node chain with p0 at the end
props 0
channels 1
nodes 0 1
edge 1 0 1
val 0 1
"""

AUTOMATON_DOC = """gradedwl-automaton v1
# accept when some successor carried p0 at round 0
props 0
channels 1
states yes no ok
init {p0} yes
init default no
rule yes else -> yes
rule no [1: yes>=1] -> ok
rule no else -> no
rule ok else -> ok
accept ok yes
"""


class TestModelFormat:
    def test_parse(self):
        m = parse_model(MODEL_DOC)
        assert m.domain == (0, 1)
        assert m.successors(0, 1) == (1,)
        assert m.valuation(0) == frozenset({1})

    def test_roundtrip_canonical(self):
        m = parse_model(MODEL_DOC)
        text = serialize_model(m)
        again = parse_model(text)
        assert serialize_model(again) == text
        assert again.domain == m.domain
        assert again.edge_triples() == m.edge_triples()

    def test_missing_header(self):
        with pytest.raises(InputFormatError) as err:
            parse_model("nodes 0\nchannels 1\n")
        assert err.value.line == 1

    def test_unknown_keyword_line_number(self):
        doc = MODEL_HEADER + "\nchannels 1\nnodes 0\nbogus 1\n"
        with pytest.raises(InputFormatError) as err:
            parse_model(doc)
        assert err.value.line == 4

    def test_non_integer_rejected(self):
        doc = MODEL_HEADER + "\nchannels 1\nnodes zero\n"
        with pytest.raises(InputFormatError) as err:
            parse_model(doc)
        assert err.value.line == 3

    def test_missing_channels(self):
        with pytest.raises(InputFormatError):
            parse_model(MODEL_HEADER + "\nnodes 0\n")

    def test_missing_nodes(self):
        with pytest.raises(InputFormatError):
            parse_model(MODEL_HEADER + "\nchannels 1\n")

    def test_edge_arity(self):
        doc = MODEL_HEADER + "\nchannels 1\nnodes 0\nedge 1 0\n"
        with pytest.raises(InputFormatError):
            parse_model(doc)

    def test_semantic_error_wrapped(self):
        doc = MODEL_HEADER + "\nchannels 1\nnodes 0\nedge 1 0 9\n"
        with pytest.raises(InputFormatError):
            parse_model(doc)

    def test_comments_and_blanks_ignored(self):
        doc = MODEL_HEADER + "\n\n# comment\nchannels 1  # trailing\nnodes 0\n"
        assert parse_model(doc).domain == (0,)


class TestAutomatonFormat:
    def test_parse_and_run(self):
        spec = parse_automaton(AUTOMATON_DOC)
        m = parse_model(MODEL_DOC)
        assert run(spec, pointed(m, 0), max_rounds=2).accepted
        # node 1 satisfies p0 itself, initialized straight into yes
        assert run(spec, pointed(m, 1), max_rounds=2).accepted

    def test_agrees_with_model_checker(self):
        spec = parse_automaton(AUTOMATON_DOC)
        f = parse("(p0 | <1:1>p0)", V1)
        docs = [
            ([(1, 0, 1)], {0: [1]}),
            ([(1, 0, 1)], {}),
            ([], {0: [0]}),
            ([(1, 0, 0)], {}),
        ]
        for edges, valuation in docs:
            m = KripkeModel([0, 1], V1, edges, valuation)
            for w in m.domain:
                pm = pointed(m, w)
                assert run(spec, pm, max_rounds=2).accepted == check(pm, f)

    def test_total_pattern(self):
        doc = AUTOMATON_HEADER + """
states a b
init default a
rule a [1: total=0] -> b
rule a else -> a
rule b else -> b
accept b
"""
        spec = parse_automaton(doc)
        sink = KripkeModel([0], Vocabulary(frozenset(), 1), [], {})
        assert run(spec, pointed(sink, 0), max_rounds=1).accepted

    def test_missing_else_rejected(self):
        doc = AUTOMATON_HEADER + """
states a
init default a
rule a [1: a>=1] -> a
accept a
"""
        with pytest.raises(InputFormatError):
            parse_automaton(doc)

    def test_stateless_state_rejected(self):
        doc = AUTOMATON_HEADER + "\nstates a b\ninit default a\nrule a else -> a\n"
        with pytest.raises(InputFormatError):
            parse_automaton(doc)

    def test_undeclared_target_rejected(self):
        doc = AUTOMATON_HEADER + "\nstates a\ninit default a\nrule a else -> z\n"
        with pytest.raises(InputFormatError):
            parse_automaton(doc)

    def test_undeclared_accepting_rejected(self):
        doc = AUTOMATON_HEADER + "\nstates a\ninit default a\nrule a else -> a\naccept z\n"
        with pytest.raises(InputFormatError):
            parse_automaton(doc)

    def test_missing_init_row_reported_at_runtime(self):
        doc = AUTOMATON_HEADER + """
props 0
states a
init {} a
rule a else -> a
"""
        spec = parse_automaton(doc)
        m = KripkeModel([0], V1, [], {0: [0]})
        with pytest.raises(InputFormatError):
            run(spec, pointed(m, 0), max_rounds=0)

    def test_bad_pattern_constraint(self):
        doc = AUTOMATON_HEADER + "\nstates a\ninit default a\nrule a [1: junk] -> a\n"
        with pytest.raises(InputFormatError):
            parse_automaton(doc)

    def test_first_matching_rule_wins(self):
        doc = AUTOMATON_HEADER + """
states s hit miss
init default s
rule s [1: total=0] -> hit
rule s else -> miss
rule hit else -> hit
rule miss else -> miss
accept hit
"""
        spec = parse_automaton(doc)
        sink = KripkeModel([0], Vocabulary(frozenset(), 1), [], {})
        res = run(spec, pointed(sink, 0), max_rounds=1)
        assert res.accepted and res.round == 1
