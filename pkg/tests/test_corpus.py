from fractions import Fraction

import pytest

from hamlag import (
    Cube,
    Product,
    Simplex,
    VertexCut,
    build,
    check_generic,
    delzant_check,
    delzant_corpus,
    enumerate_vertices,
    parse_recipe,
    polygon_recipe,
    polyhedron_bounded,
    random_system,
    to_polytope,
    to_quadrics,
    validate,
)
from hamlag.corpus import format_recipe
from hamlag.errors import CutTooDeep, MalformedRecipe
from hamlag.quadrics import same_solution_plane


def test_square_product():
    square = build(Product(Simplex(1), Simplex(1)))
    assert (square.m, square.n) == (4, 2)
    assert delzant_check(square).embeds


def test_cube3():
    cube = build(Cube(3))
    assert (cube.m, cube.n) == (6, 3)
    assert len(enumerate_vertices(cube)) == 8
    assert delzant_check(cube).embeds


def test_vertex_cut_makes_quadrilateral():
    cut = build(VertexCut(Simplex(2), 0, Fraction(1, 2)))
    assert cut.m == 4
    assert len(enumerate_vertices(cut)) == 4
    assert delzant_check(cut).embeds


def test_whole_corpus_generic_and_delzant():
    for name, recipe in delzant_corpus():
        presentation = build(recipe)
        assert check_generic(presentation).generic, name
        assert delzant_check(presentation).embeds, name


def test_cut_too_deep():
    with pytest.raises(CutTooDeep):
        build(VertexCut(Simplex(2), 0, Fraction(2)))


def test_malformed_recipes():
    with pytest.raises(MalformedRecipe):
        build(Simplex(0))
    with pytest.raises(MalformedRecipe):
        build(VertexCut(Simplex(2), 9, Fraction(1, 2)))
    with pytest.raises(MalformedRecipe):
        parse_recipe("simplex(2")
    with pytest.raises(MalformedRecipe):
        parse_recipe("octagon(2)")


def test_recipe_parser_roundtrip():
    text = "vertex_cut(product(simplex(1),cube(2)),0,1/2)"
    assert format_recipe(parse_recipe(text)) == text


def test_recipe_determinism():
    a = build(parse_recipe("vertex_cut(simplex(2),0,1/2)"))
    b = build(parse_recipe("vertex_cut(simplex(2),0,1/2)"))
    assert a == b


@pytest.mark.parametrize("sides", range(3, 10))
def test_polygon_recipes(sides):
    p = build(polygon_recipe(sides))
    assert (p.m, p.n) == (sides, 2)
    report = check_generic(p)
    assert report.generic and not report.redundant_strict
    assert polyhedron_bounded(p)
    assert delzant_check(p).embeds


def test_random_system_validates_and_roundtrips():
    for seed in range(8):
        result = random_system(5, 2, seed=seed, coefficient_bound=3)
        system = result.system
        assert validate(system).nonempty_nondegenerate
        assert same_solution_plane(system, to_quadrics(to_polytope(system)))


def test_random_system_determinism():
    a = random_system(5, 2, seed=7)
    b = random_system(5, 2, seed=7)
    assert a.system == b.system and a.rejected == b.rejected


def test_random_system_rejects_bad_shape():
    with pytest.raises(MalformedRecipe):
        random_system(3, 3, seed=0)
    with pytest.raises(MalformedRecipe):
        random_system(3, 1, seed=0, coefficient_bound=0)
