import pytest

from icelab import AlgebraError, AlgebraSyntaxError, fixture_path, load_algebra, parse_algebra

A2 = "field 2\nvertex 1\nvertex 2\narrow a 1 2\n"


def test_two_vertex_transcription():
    alg = parse_algebra(A2)
    assert (alg.n, len(alg.arrows), len(alg.relations)) == (2, 1, 0)
    assert alg.p == 2


def test_a3_with_relation():
    alg = load_algebra(fixture_path("a3_rad2"))
    assert (alg.n, len(alg.arrows), len(alg.relations)) == (3, 2, 1)
    pa = alg.paths
    assert pa.dim(0, 2) == 0
    assert pa.dim(0, 1) == 1


def test_undeclared_vertex():
    with pytest.raises(AlgebraError, match="undeclared vertex"):
        parse_algebra("field 2\nvertex 1\nvertex 2\narrow a 1 3\n")


def test_syntax_error_position():
    with pytest.raises(AlgebraSyntaxError) as info:
        parse_algebra("field 2\nvertex 1\n  frobnicate 1\n")
    assert (info.value.line, info.value.column) == (3, 3)


@pytest.mark.parametrize("text", ["field x\n", "vertex\n", "vertex 1\narrow a 1\n", "vertex 1\narrow a 1 1\nrelation a*\n"])
def test_malformed_lines(text):
    with pytest.raises(AlgebraSyntaxError):
        parse_algebra(text)


def test_non_prime_field():
    with pytest.raises(AlgebraError, match="not prime"):
        parse_algebra("field 4\nvertex 1\n")


def test_infinite_dimensional_rejected():
    with pytest.raises(AlgebraError, match="infinite"):
        parse_algebra("field 2\nvertex 1\narrow x 1 1\n").paths


def test_field_override_and_digest():
    a = parse_algebra(A2)
    b = parse_algebra(A2, p=3)
    assert b.p == 3
    assert a.digest() != b.digest()
    assert parse_algebra(a.to_text()).digest() == a.digest()


def test_comments_ignored():
    assert parse_algebra("# hi\n" + A2.replace("arrow a 1 2", "arrow a 1 2  # the arrow")).digest() == parse_algebra(A2).digest()


def test_commutativity_relation_paths():
    sq = "field 3\nvertex 1\nvertex 2\nvertex 3\nvertex 4\narrow a 1 2\narrow b 2 4\narrow c 1 3\narrow d 3 4\nrelation a*b + 2*c*d\n"
    alg = parse_algebra(sq)
    assert alg.paths.dim(0, 3) == 1
