"""One-relator group presentations: parsing, abelianization, and the
homology and K-homology of the presentation two-complex.

Grammar (whitespace insignificant between tokens)::

    presentation := "<" gens "|" rel ">"
    gens         := ident {"," ident}
    rel          := word ["=" word]
    word         := letter {letter}
    letter       := ident ["^" int]
    ident        := [A-Za-z][A-Za-z0-9_]*
    int          := nonzero signed decimal

An equation form w1 = w2 is converted to the relator w1 * w2^-1. Only one
relator is accepted; a comma in the relator part is an error.

The one-vertex complex with one edge per generator and a single 2-cell
glued along the relator has H0 = Z, H1 = the abelianization (the
1-boundary vanishes since there is one vertex), and H2 = Z exactly when
the relator's exponent vector vanishes. When the relator is not a proper
power, the complex is a 2-dimensional classifying space for the group and
its K-homology is K0 = H0 + H2, K1 = H1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .abelian import (
    FgAbGroup,
    GroupHom,
    IntMatrix,
    _basis_vec,
    _cokernel_ext,
    _dominant_names,
    element_order,
)
from .errors import DomainError, ParseError, ProperPowerRelator, UndeclaredGenerator
from .ledger import KClass, KClassLedger

Letter = tuple[int, int]  # (generator index, nonzero exponent)


def _reduce_letters(letters) -> tuple[Letter, ...]:
    out: list[list[int]] = []
    for gen, exp in letters:
        gen = int(gen)
        exp = int(exp)
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            out[-1][1] += exp
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([gen, exp])
    return tuple((g, e) for g, e in out)


@dataclass(frozen=True)
class Word:
    """A freely reduced word: adjacent letters use distinct generators."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _reduce_letters(self.letters))

    @property
    def is_empty(self) -> bool:
        return not self.letters

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def exponent_sum(self, gen: int) -> int:
        return sum(e for g, e in self.letters if g == gen)

    def flatten(self) -> list[int]:
        """Unit letters as signed generator indices (index+1, negated for inverses)."""
        out = []
        for g, e in self.letters:
            step = 1 if e > 0 else -1
            out.extend([(g + 1) * step] * abs(e))
        return out

    def cycled(self, k: int) -> "Word":
        flat = self.flatten()
        flat = flat[k:] + flat[:k]
        return Word(tuple((abs(s) - 1, 1 if s > 0 else -1) for s in flat))


@dataclass(frozen=True)
class Presentation:
    """A one-relator presentation < generators | relator >."""

    generators: tuple[str, ...]
    relator: Word

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("generator names must be distinct")
        for g, _ in self.relator.letters:
            if not 0 <= g < len(self.generators):
                raise ValueError("relator uses an out-of-range generator index")


@dataclass(frozen=True)
class ComplexHomology:
    """Homology of the presentation complex; h0 is Z with a named basepoint."""

    h0: FgAbGroup
    h1: FgAbGroup
    h2: FgAbGroup
    basepoint_gen: str

    def __post_init__(self):
        if self.h0.free_rank != 1 or self.h0.torsion:
            raise ValueError("h0 of a connected complex must be Z")
        if self.h2.torsion or self.h2.free_rank > 1:
            raise ValueError("h2 of a one-relator complex is Z or 0")


# ---------------------------------------------------------------------------
# parsing


_SYMBOLS = "<>|,=^"


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _SYMBOLS:
            tokens.append(("sym", ch, i))
            i += 1
            continue
        if ch.isalpha():
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("ident", text[i:j], i))
            i = j
            continue
        if ch.isdigit() or ch in "+-":
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            lit = text[i:j]
            if lit in "+-":
                raise ParseError("dangling sign", i)
            tokens.append(("int", lit, i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, value: str):
        kind, text, at = self.take()
        if kind != "sym" or text != value:
            raise ParseError(f"expected {value!r}, found {text or 'end of input'!r}", at)

    def parse(self) -> Presentation:
        self.expect("<")
        gens = [self._ident("generator name")]
        while self.peek()[:2] == ("sym", ","):
            self.take()
            gens.append(self._ident("generator name"))
        if len(set(gens)) != len(gens):
            raise ParseError("duplicate generator name", self.peek()[2])
        self.expect("|")
        index = {name: i for i, name in enumerate(gens)}
        left = self._word(index)
        relator = left
        if self.peek()[:2] == ("sym", "="):
            self.take()
            right = self._word(index)
            relator = left * right.inverse()
        kind, text, at = self.peek()
        if (kind, text) == ("sym", ","):
            raise ParseError("only one relator is supported", at)
        self.expect(">")
        kind, text, at = self.take()
        if kind != "end":
            raise ParseError(f"trailing input {text!r}", at)
        return Presentation(tuple(gens), relator)

    def _ident(self, what: str) -> str:
        kind, text, at = self.take()
        if kind != "ident":
            raise ParseError(f"expected {what}, found {text or 'end of input'!r}", at)
        return text

    def _word(self, index: dict[str, int]) -> Word:
        letters = []
        if self.peek()[0] != "ident":
            kind, text, at = self.peek()
            raise ParseError(f"expected a word, found {text or 'end of input'!r}", at)
        while self.peek()[0] == "ident":
            kind, name, at = self.take()
            if name not in index:
                raise UndeclaredGenerator(f"undeclared generator {name!r}", at)
            exp = 1
            if self.peek()[:2] == ("sym", "^"):
                self.take()
                kind, lit, at2 = self.take()
                if kind != "int":
                    raise ParseError("expected an exponent after '^'", at2)
                exp = int(lit)
                if exp == 0:
                    raise ParseError("zero exponent is not allowed", at2)
            letters.append((index[name], exp))
        return Word(tuple(letters))


def parse(text: str) -> Presentation:
    """Parse presentation text; the relator comes back freely reduced."""
    return _Parser(text).parse()


def render(p: Presentation) -> str:
    """Parseable text form; inverse of ``parse`` on constructible input."""
    if p.relator.is_empty:
        raise ValueError("the empty relator has no textual form")
    gens = ", ".join(p.generators)
    body = " ".join(
        p.generators[g] if e == 1 else f"{p.generators[g]}^{e}" for g, e in p.relator.letters
    )
    return f"< {gens} | {body} >"


# ---------------------------------------------------------------------------
# invariants of the presentation complex


def exponent_vector(p: Presentation) -> tuple[int, ...]:
    """Sum of exponents of each generator in the relator."""
    return tuple(p.relator.exponent_sum(i) for i in range(len(p.generators)))


def _abelianization_ext(p: Presentation) -> tuple[FgAbGroup, GroupHom]:
    m = len(p.generators)
    free = FgAbGroup.free(m, p.generators)
    relator_source = FgAbGroup.free(1, ("r",))
    h = GroupHom(relator_source, free, IntMatrix.column(exponent_vector(p)))
    data = _cokernel_ext(h)
    rows = [list(data.projection.matrix.row(i)) for i in range(data.group.gen_count)]
    names = _dominant_names(rows, p.generators, "")
    group = data.group.renamed(names)
    projection = GroupHom(free, group, data.projection.matrix)
    return group, projection


def abelianization(p: Presentation) -> FgAbGroup:
    """The quotient by the commutator subgroup: the cokernel of the
    exponent map, with generator names inherited from the presentation."""
    return _abelianization_ext(p)[0]


def _cyclic_reduction(flat: list[int]) -> list[int]:
    out = list(flat)
    while len(out) >= 2 and out[0] == -out[-1]:
        out = out[1:-1]
    return out


def _is_proper_power(flat: list[int]) -> bool:
    n = len(flat)
    if n == 0:
        return True
    for period in range(1, n):
        if n % period:
            continue
        if all(flat[i] == flat[i - period] for i in range(period, n)):
            return True
    return False


def presentation_homology(p: Presentation) -> ComplexHomology:
    """Homology of the one-vertex, m-edge, one-cell complex.

    Requires the relator not to be a proper power (otherwise the group has
    torsion and the complex is not aspherical); detection extracts the
    minimal cyclic root of the relator.
    """
    reduced = _cyclic_reduction(p.relator.flatten())
    if _is_proper_power(reduced):
        raise ProperPowerRelator(
            "the relator is a proper power (or trivial), so the two-complex "
            "is not a classifying space"
        )
    h1 = abelianization(p)
    h0 = FgAbGroup.free(1, ("pt",))
    if any(exponent_vector(p)):
        h2 = FgAbGroup.trivial()
    else:
        h2 = FgAbGroup.free(1, ("cell",))
    return ComplexHomology(h0, h1, h2, basepoint_gen="pt")


def classifying_space_k(p: Presentation) -> tuple[FgAbGroup, FgAbGroup, KClassLedger]:
    """K-homology of the classifying space: K0 = H0 + H2 and K1 = H1.

    The ledger places the basepoint class "[pt]" in K0 and each group
    generator's class in K1 through the abelianization.
    """
    hom = presentation_homology(p)
    k0 = FgAbGroup.free(1 + hom.h2.free_rank, (hom.basepoint_gen,) + hom.h2.gen_names)
    h1, proj = _abelianization_ext(p)
    k1 = h1

    ledger = KClassLedger()
    ledger = ledger.with_entry(
        "[pt]",
        KClass("k0", _basis_vec(k0.gen_count, 0), math.inf, "inclusion of a base point"),
    )
    for i, name in enumerate(p.generators):
        vec = proj.apply(_basis_vec(len(p.generators), i))
        ledger = ledger.with_entry(
            name, KClass("k1", vec, element_order(k1, vec), "class of a group generator")
        )
    return k0, k1, ledger


def bs_presentation(n: int) -> Presentation:
    """The standard two-generator presentation with relator a b a^-1 b^-n."""
    if n == 0:
        raise DomainError("the parameter must be a nonzero integer")
    return Presentation(("a", "b"), Word(((0, 1), (1, 1), (0, -1), (1, -n))))
