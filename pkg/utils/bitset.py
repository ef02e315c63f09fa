"""Fixed-width membership masks over densely indexed elements."""


def bits(mask):
    """Yield the indices set in ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices):
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def full(width):
    return (1 << width) - 1


def popcount(mask):
    return bin(mask).count('1')


def contains(mask, i):
    return (mask >> i) & 1 == 1


def is_subset(a, b):
    return a & ~b == 0


def to_list(mask):
    return list(bits(mask))
