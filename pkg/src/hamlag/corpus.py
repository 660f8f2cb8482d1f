"""Deterministic test-instance generators.

Recipes compose standard constructions that preserve the unimodular vertex
condition: simplices, cubes, products, and vertex cuts whose new normal is
the negated sum of the cut vertex's active normals.  Random quadric systems
are seeded integer draws whose right-hand side is manufactured inside the
full cone, rejection-sampled against the validity conditions.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import CutTooDeep, ExhaustedAttempts, MalformedRecipe
from .linalg import RationalMatrix, dot, solve_unique, vec
from .polytopes import PolytopePresentation, enumerate_vertices
from .quadrics import QuadricSystem, validate


@dataclass(frozen=True)
class Simplex:
    n: int


@dataclass(frozen=True)
class Cube:
    n: int


@dataclass(frozen=True)
class Product:
    left: "Recipe"
    right: "Recipe"


@dataclass(frozen=True)
class VertexCut:
    child: "Recipe"
    vertex_index: int
    depth: Fraction


Recipe = Union[Simplex, Cube, Product, VertexCut]


def simplex_presentation(n: int) -> PolytopePresentation:
    """Standard simplex: coordinate halfspaces plus the diagonal cap."""
    if n < 1:
        raise MalformedRecipe(f"simplex dimension must be positive, got {n}")
    rows = [[1 if j == i else 0 for j in range(n)] for i in range(n)]
    rows.append([-1] * n)
    b = [0] * n + [1]
    return PolytopePresentation.from_rows(rows, b)


def product_presentation(p: PolytopePresentation, q: PolytopePresentation) -> PolytopePresentation:
    rows = []
    for r in p.a.entries:
        rows.append(list(r) + [Fraction(0)] * q.n)
    for r in q.a.entries:
        rows.append([Fraction(0)] * p.n + list(r))
    return PolytopePresentation.from_rows(rows, tuple(p.b) + tuple(q.b))


def cube_presentation(n: int) -> PolytopePresentation:
    if n < 1:
        raise MalformedRecipe(f"cube dimension must be positive, got {n}")
    out = simplex_presentation(1)
    for _ in range(n - 1):
        out = product_presentation(out, simplex_presentation(1))
    return out


def vertex_cut_presentation(p: PolytopePresentation, vertex_index: int,
                            depth: Fraction) -> PolytopePresentation:
    """Cut one vertex with the hyperplane normal to the active-normal sum.

    With inward normals the sum of the cut vertex's active normals points
    into the polytope, so the added inequality excises exactly a
    neighbourhood of the vertex; any replacement of one active normal by the
    (sign-irrelevant) sum keeps vertex determinants unimodular.  The cut
    must land strictly inside every edge leaving the vertex; edge reach is
    computed exactly by the usual minimum-ratio rule, with unbounded edges
    imposing no limit.
    """
    depth = Fraction(depth)
    if depth <= 0:
        raise MalformedRecipe(f"cut depth must be positive, got {depth}")
    vertices = enumerate_vertices(p)
    if not 0 <= vertex_index < len(vertices):
        raise MalformedRecipe(
            f"vertex index {vertex_index} out of range, presentation has {len(vertices)}"
        )
    v = vertices[vertex_index]
    active = sorted(v.active_set)
    if len(active) != p.n:
        raise MalformedRecipe("vertex cut needs a simple vertex")
    normals = RationalMatrix.from_rows([p.a.row(i) for i in active], p.n)
    new_normal = vec(sum(col, start=Fraction(0)) for col in normals.columns())
    for j_pos in range(p.n):
        # edge direction loosening exactly the j-th active constraint
        rhs = [Fraction(1 if t == j_pos else 0) for t in range(p.n)]
        w = solve_unique(normals, rhs)
        assert w is not None
        # the cut crosses this edge at parameter depth (the pairing is 1)
        crossing = depth / dot(new_normal, w)
        assert crossing == depth
        reach = None
        for l in range(p.m):
            if l in v.active_set:
                continue
            slope = dot(p.a.row(l), w)
            if slope < 0:
                t = -p.value(l, v.point) / slope
                reach = t if reach is None else min(reach, t)
        if reach is not None and crossing >= reach:
            raise CutTooDeep(f"depth {depth} reaches past an adjacent edge (limit {reach})")
    offset = -dot(new_normal, v.point) - depth
    rows = [list(r) for r in p.a.entries] + [list(new_normal)]
    return PolytopePresentation.from_rows(rows, tuple(p.b) + (offset,))


def build(recipe: Recipe) -> PolytopePresentation:
    """Evaluate a recipe tree into a presentation."""
    if isinstance(recipe, Simplex):
        return simplex_presentation(recipe.n)
    if isinstance(recipe, Cube):
        return cube_presentation(recipe.n)
    if isinstance(recipe, Product):
        return product_presentation(build(recipe.left), build(recipe.right))
    if isinstance(recipe, VertexCut):
        return vertex_cut_presentation(build(recipe.child), recipe.vertex_index, recipe.depth)
    raise MalformedRecipe(f"unknown recipe node {recipe!r}")


# ---------------------------------------------------------------------------
# Recipe expressions


_TOKEN = re.compile(r"\s*([a-z_]+|\d+/\d+|\d+|[(),])")


def parse_recipe(text: str) -> Recipe:
    """Parse expressions like ``vertex_cut(product(simplex(1),cube(2)),0,1/2)``."""
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match:
            raise MalformedRecipe(f"unexpected character at position {pos}: {text[pos]!r}")
        tokens.append(match.group(1))
        pos = match.end()
    cursor = 0

    def peek():
        return tokens[cursor] if cursor < len(tokens) else None

    def take(expected=None):
        nonlocal cursor
        if cursor >= len(tokens):
            raise MalformedRecipe("unexpected end of recipe")
        tok = tokens[cursor]
        if expected is not None and tok != expected:
            raise MalformedRecipe(f"expected {expected!r}, got {tok!r}")
        cursor += 1
        return tok

    def parse_number() -> Fraction:
        tok = take()
        if not re.fullmatch(r"\d+(/\d+)?", tok):
            raise MalformedRecipe(f"expected a number, got {tok!r}")
        return Fraction(tok)

    def parse_expr() -> Recipe:
        name = take()
        take("(")
        if name == "simplex":
            n = parse_number()
            take(")")
            return Simplex(int(n))
        if name == "cube":
            n = parse_number()
            take(")")
            return Cube(int(n))
        if name == "product":
            left = parse_expr()
            take(",")
            right = parse_expr()
            take(")")
            return Product(left, right)
        if name == "vertex_cut":
            child = parse_expr()
            take(",")
            index = parse_number()
            take(",")
            depth = parse_number()
            take(")")
            return VertexCut(child, int(index), depth)
        raise MalformedRecipe(f"unknown construction {name!r}")

    recipe = parse_expr()
    if peek() is not None:
        raise MalformedRecipe(f"trailing tokens after recipe: {tokens[cursor:]}")
    return recipe


def format_recipe(recipe: Recipe) -> str:
    if isinstance(recipe, Simplex):
        return f"simplex({recipe.n})"
    if isinstance(recipe, Cube):
        return f"cube({recipe.n})"
    if isinstance(recipe, Product):
        return f"product({format_recipe(recipe.left)},{format_recipe(recipe.right)})"
    if isinstance(recipe, VertexCut):
        return f"vertex_cut({format_recipe(recipe.child)},{recipe.vertex_index},{recipe.depth})"
    raise MalformedRecipe(f"unknown recipe node {recipe!r}")


# ---------------------------------------------------------------------------
# Random systems


@dataclass(frozen=True)
class RandomSystemResult:
    system: QuadricSystem
    rejected: int


def random_system(m: int, n: int, seed: int, coefficient_bound: int = 3,
                  max_rejections: int = 1000) -> RandomSystemResult:
    """Seeded random valid quadric system.

    Coefficients are uniform integers in [-bound, bound]; the right-hand
    side is the matrix applied to a positive integer vector, which settles
    the full-cone condition by construction.  Draws failing the small-cone
    condition are rejected and counted.
    """
    if coefficient_bound < 1:
        raise MalformedRecipe(f"coefficient bound must be at least 1, got {coefficient_bound}")
    if not 1 <= m - n <= m:
        raise MalformedRecipe(f"need 1 <= m - n <= m, got m={m}, n={n}")
    rng = random.Random(seed)
    r = m - n
    rejected = 0
    while rejected <= max_rejections:
        rows = [[rng.randint(-coefficient_bound, coefficient_bound) for _ in range(m)]
                for _ in range(r)]
        weights = [rng.randint(1, coefficient_bound) for _ in range(m)]
        c = [sum(row[k] * weights[k] for k in range(m)) for row in rows]
        try:
            system = QuadricSystem.from_rows(rows, c)
        except ValueError:
            rejected += 1
            continue
        if validate(system).nonempty_nondegenerate:
            return RandomSystemResult(system, rejected)
        rejected += 1
    raise ExhaustedAttempts(f"no valid system after {max_rejections} rejections")


def delzant_corpus() -> list[tuple[str, Recipe]]:
    """The named recipe corpus exercised by the acceptance suite."""
    corpus: list[tuple[str, Recipe]] = []
    for n in range(1, 5):
        corpus.append((f"simplex({n})", Simplex(n)))
    for n in range(1, 4):
        corpus.append((f"cube({n})", Cube(n)))
    corpus.append(("product(simplex(1),simplex(1))", Product(Simplex(1), Simplex(1))))
    corpus.append(("product(simplex(2),simplex(1))", Product(Simplex(2), Simplex(1))))
    corpus.append(("product(simplex(2),simplex(2))", Product(Simplex(2), Simplex(2))))
    corpus.append(("product(cube(2),simplex(1))", Product(Cube(2), Simplex(1))))
    corpus.append(("product(simplex(3),simplex(1))", Product(Simplex(3), Simplex(1))))
    half = Fraction(1, 2)
    third = Fraction(1, 3)
    corpus.append(("vertex_cut(simplex(2),0,1/2)", VertexCut(Simplex(2), 0, half)))
    corpus.append(("vertex_cut(simplex(3),0,1/2)", VertexCut(Simplex(3), 0, half)))
    corpus.append(("vertex_cut(cube(2),0,1/2)", VertexCut(Cube(2), 0, half)))
    corpus.append(("vertex_cut(cube(3),0,1/2)", VertexCut(Cube(3), 0, half)))
    corpus.append(
        ("vertex_cut(vertex_cut(simplex(2),0,1/2),1,1/3)",
         VertexCut(VertexCut(Simplex(2), 0, half), 1, third))
    )
    corpus.append(
        ("vertex_cut(product(simplex(2),simplex(1)),0,1/3)",
         VertexCut(Product(Simplex(2), Simplex(1)), 0, third))
    )
    return corpus


def polygon_recipe(sides: int) -> Recipe:
    """An irredundant Delzant polygon with the given facet count via repeated cuts."""
    if sides < 3:
        raise MalformedRecipe(f"a polygon needs at least 3 sides, got {sides}")
    recipe: Recipe = Simplex(2)
    depth = Fraction(1, 3)
    for extra in range(sides - 3):
        recipe = VertexCut(recipe, 0, depth)
        depth = depth / 2
    return recipe
