"""The three building blocks ``A_p``, ``B_p``, ``C_p``."""

from __future__ import annotations

from sympy import isprime

from .._exceptions import NotPrimeError
from ..types.enums import BlockKind
from ..words import Word, commutator, conjugate, multiply, power
from .model import Presentation

# (generators, relators) of each block presentation
BLOCK_COUNTS: dict[BlockKind, tuple[int, int]] = {
    BlockKind.A: (2, 2),
    BlockKind.B: (2, 4),
    BlockKind.C: (1, 1),
}


def require_prime(p: int) -> int:
    if not isprime(p):
        raise NotPrimeError(p)
    return p


def _relation(left: Word, right: Word) -> Word:
    """The relator ``left * right^-1`` of the relation ``left = right``."""
    return multiply(left, power(right, -1))


def building_block(kind: BlockKind | str, p: int) -> Presentation:
    """The block presentation of the given kind at the prime ``p``.

    Relations are stored as relators ``left * right^-1``:

    - ``A_p = <a,b | a^p = b^p, a^b = a^(p+1)>``
    - ``B_p = <a,b | a^p, b^p, [[a,b],a], [[a,b],b]>``, except
      ``B_2 = <a,b | a^4, b^4, (ab)^2, (a^-1 b)^2>``
    - ``C_p = <a | a^p>``

    Raises:
        NotPrimeError: If ``p`` is not prime.
    """
    kind = BlockKind(kind)
    require_prime(p)
    a = Word.generator(0)
    if kind is BlockKind.C:
        return Presentation(generator_names=("a",), relators=(power(a, p),), prime=p)

    b = Word.generator(1)
    if kind is BlockKind.A:
        relators = (
            _relation(power(a, p), power(b, p)),
            _relation(conjugate(a, b), power(a, p + 1)),
        )
    elif p == 2:
        relators = (
            power(a, 4),
            power(b, 4),
            power(multiply(a, b), 2),
            power(multiply(power(a, -1), b), 2),
        )
    else:
        ab = commutator(a, b)
        relators = (power(a, p), power(b, p), commutator(ab, a), commutator(ab, b))
    return Presentation(generator_names=("a", "b"), relators=relators, prime=p)


def block_name(kind: BlockKind | str, exponent: int = 1, *, ascii: bool = False) -> str:
    """Label such as ``C``, ``C²`` or ``C^2``."""
    kind = BlockKind(kind)
    if exponent == 1:
        return kind.value
    if ascii:
        return f"{kind.value}^{exponent}"
    superscripts = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
    return f"{kind.value}{str(exponent).translate(superscripts)}"
