"""
Bit-set helpers for Grassmann monomials.

A monomial θ_{i1}θ_{i2}...θ_{ik} with i1 < i2 < ... < ik is stored as an
integer whose bit (i - 1) is set for every generator θ_i. The unit monomial
is 0.
"""

from collections.abc import Iterable, Iterator

from core.errors import FormatError

UNIT = 0


def set_bit_indices(mask: int) -> Iterator[int]:
    """Yield zero-based indices of the set bits, lowest first."""
    index = 0
    while mask:
        if mask & 1:
            yield index
        mask >>= 1
        index += 1


def degree(mask: int) -> int:
    """Number of generators in the monomial."""
    return mask.bit_count()


def generators(mask: int) -> list[int]:
    """One-based generator indices of a monomial, increasing."""
    return [index + 1 for index in set_bit_indices(mask)]


def mask_from_generators(gens: Iterable[int], n: int) -> int:
    """Canonical mask for a strictly increasing generator list."""
    mask = 0
    previous = 0
    for gen in gens:
        if not 1 <= gen <= n:
            raise FormatError(
                f"Generator index {gen} outside 1..{n} for algebra_n={n}"
            )
        if gen <= previous:
            raise FormatError(
                f"Generator indices must be strictly increasing, got {gen} "
                f"after {previous}"
            )
        mask |= 1 << (gen - 1)
        previous = gen
    return mask


def reorder_sign(left: int, right: int) -> int:
    """Sign of sorting the concatenation ``left`` then ``right``.

    Counts the pairs (i in left, j in right) with i > j; each such pair is
    one transposition of anticommuting generators. Overlapping masks are the
    caller's concern (the product vanishes).
    """
    crossings = 0
    rest = right
    while rest:
        low = rest & -rest
        crossings += (left & ~((low << 1) - 1)).bit_count()
        rest ^= low
    return -1 if crossings & 1 else 1


def reversal_sign(mask: int) -> int:
    """Sign of reversing a monomial of length k: (-1)^(k(k-1)/2)."""
    k = mask.bit_count()
    return -1 if (k * (k - 1) // 2) & 1 else 1


def superstar_image(mask: int) -> tuple[int, int]:
    """Image of a monomial under the paired superstar, as (sign, mask).

    θ_{2k-1} maps to θ_{2k} and θ_{2k} to -θ_{2k-1}; the images are
    multiplied in the original generator order and then sorted.
    """
    sign = 1
    image = 0
    for index in set_bit_indices(mask):
        # zero-based even index is the one-based odd generator
        if index % 2 == 0:
            target = index + 1
        else:
            target = index - 1
            sign = -sign
        bit = 1 << target
        sign *= reorder_sign(image, bit)
        image |= bit
    return sign, image
