"""Exact p-adic balls.

A ball is the coset ``center + p^m Z_p``. Centers live in Z[1/p] and are kept
as ``mantissa * p^exponent`` with the mantissa reduced modulo p^(m - exponent)
and coprime to p (or zero). The open ball of radius p^-n is the coset with
m = n + 1.
"""
import logging
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from config import Config
from models.tree_model import tree_from_parents
from utils.errors import (NotRepresentable, ParseError, PreconditionError,
                          PrimeMismatch, TooLarge)

LOGGER = logging.getLogger(__name__)

DISJOINT, LEFT_INSIDE, RIGHT_INSIDE, EQUAL = 'Disjoint', 'LeftInsideRight', 'RightInsideLeft', 'Equal'

BALL_SYNTAX = re.compile(r'^\s*(\d+)\^(-?\d+)\s*\*\s*Zp\s*(?:\+\s*(-?\d+(?:/\d+)?))?\s*$')


def is_prime(p):
    return p >= 2 and all(p % d for d in range(2, math.isqrt(p) + 1))


def require_prime(p):
    if not is_prime(p):
        raise PreconditionError(f'{p} não é primo', p=p)


def valuation(p, x):
    """v_p of an integer or Fraction; math.inf for zero."""
    x = Fraction(x)
    if x == 0:
        return math.inf
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def norm(p, x):
    v = valuation(p, x)
    return Fraction(0) if v == math.inf else Fraction(p) ** -v


def representable(p, x):
    """``x`` as a Fraction whose denominator is a power of p."""
    x = Fraction(x)
    den = x.denominator
    while den % p == 0:
        den //= p
    if den != 1:
        raise NotRepresentable(str(x), p)
    return x


@dataclass(frozen=True, order=True)
class PAdicBall:
    p: int
    mantissa: int
    exponent: int
    coset_exp: int

    @cached_property
    def center(self):
        return self.mantissa * Fraction(self.p) ** self.exponent

    @property
    def radius(self):
        """r with the ball equal to {x : |x - center| < r}."""
        return Fraction(self.p) ** (1 - self.coset_exp)

    def children(self):
        step = Fraction(self.p) ** self.coset_exp
        return [ball(self.p, self.center + k * step, self.coset_exp + 1) for k in range(self.p)]

    def label(self):
        return f'{self.p}^{self.coset_exp}*Zp+{self.center}'

    def to_dict(self):
        return {'p': self.p, 'center': {'m': self.mantissa, 'e': self.exponent},
                'coset_exp': self.coset_exp}

    def __str__(self):
        return self.label()


def ball(p, center, coset_exp):
    """Canonical ball center + p^coset_exp Z_p."""
    require_prime(p)
    center = representable(p, center)
    v = valuation(p, center)
    if v >= coset_exp:
        return PAdicBall(p, 0, 0, coset_exp)
    unit = center / Fraction(p) ** v
    modulus = p ** (coset_exp - v)
    return PAdicBall(p, int(unit) % modulus, v, coset_exp)


def open_ball(p, center, n):
    """B_{p^-n}(center)."""
    return ball(p, center, n + 1)


def ball_from_dict(data):
    p = data['p']
    center = data['center']
    return ball(p, Fraction(center['m']) * Fraction(p) ** center['e'], data['coset_exp'])


def parse_ball(text, p=None):
    match = BALL_SYNTAX.match(text)
    if match is None:
        raise ParseError('<bola>', 0, f'sintaxe esperada p^k*Zp+c, recebido {text!r}')
    prime, k, c = int(match.group(1)), int(match.group(2)), match.group(3) or '0'
    if p is not None and prime != p:
        raise PrimeMismatch(prime, p)
    return ball(prime, Fraction(c), k)


def trichotomy(b1, b2):
    if b1.p != b2.p:
        raise PrimeMismatch(b1.p, b2.p)
    v = valuation(b1.p, b1.center - b2.center)
    if v < min(b1.coset_exp, b2.coset_exp):
        return DISJOINT
    if b1.coset_exp == b2.coset_exp:
        return EQUAL
    return LEFT_INSIDE if b1.coset_exp > b2.coset_exp else RIGHT_INSIDE


def membership_oracle(b, x):
    x = representable(b.p, x)
    return valuation(b.p, x - b.center) >= b.coset_exp


class ResidueWindow:
    """Balls seen as residue sets inside p^-shift Z_p modulo p^(precision)."""

    def __init__(self, p, shift, precision):
        self.p = p
        self.shift = shift
        self.precision = precision
        self.modulus = p ** precision

    def residues(self, b):
        scale = Fraction(b.p) ** self.shift
        scaled_exp = b.coset_exp + self.shift
        if scaled_exp <= 0:
            return (1 << self.modulus) - 1
        step = b.p ** min(scaled_exp, self.precision)
        start = int(b.center * scale) % step
        # bits start, start + step, ... below modulus
        repunit = ((1 << self.modulus) - 1) // ((1 << step) - 1)
        return repunit << start


def residue_relation(b1, b2, window=None):
    """Trichotomy decided by comparing residue sets instead of valuations."""
    if b1.p != b2.p:
        raise PrimeMismatch(b1.p, b2.p)
    if window is None:
        shift = max(0, -min(b1.coset_exp, b2.coset_exp, b1.exponent, b2.exponent))
        window = ResidueWindow(b1.p, shift, max(b1.coset_exp, b2.coset_exp) + shift)
    return relation_of(window.residues(b1), window.residues(b2))


def relation_of(s1, s2):
    """Trichotomy verdict for two residue sets, None if they cross."""
    if s1 & s2 == 0:
        return DISJOINT
    if s1 == s2:
        return EQUAL
    if s1 & ~s2 == 0:
        return LEFT_INSIDE
    if s2 & ~s1 == 0:
        return RIGHT_INSIDE
    return None


def window_balls(p, depth):
    """Canonical balls p^m Z_p-cosets, |m| ≤ depth, inside p^-depth Z_p."""
    unit = Fraction(p) ** -depth
    balls = []
    for m in range(-depth, depth + 1):
        for k in range(p ** (m + depth)):
            balls.append(ball(p, k * unit, m))
    return balls


def verify_relations(p, depth, bound=None):
    """Check the disjointness, covering and splitting relations on a window."""
    require_prime(p)
    bound = Config.MAX_PADIC_DEPTH if bound is None else bound
    if depth > bound:
        raise TooLarge('Profundidade p-ádica', depth, bound)
    balls = window_balls(p, depth)
    window = ResidueWindow(p, depth, 2 * depth + 1)
    residues = [window.residues(b) for b in balls]
    defects = []

    disjointness = 0
    for i, b1 in enumerate(balls):
        for k in range(i, len(balls)):
            b2 = balls[k]
            verdict = trichotomy(b1, b2)
            far = norm(p, b1.center - b2.center) >= max(b1.radius, b2.radius)
            oracle = relation_of(residues[i], residues[k])
            if (verdict == DISJOINT) != far or verdict != oracle:
                defects.append({'relation': 'disjoint', 'pair': [b1.label(), b2.label()],
                                'verdict': verdict, 'oracle': oracle})
            disjointness += 1

    splitting = 0
    for b, s in zip(balls, residues):
        kids = b.children()
        pieces = [window.residues(c) for c in kids]
        union = 0
        for c, piece in zip(kids, pieces):
            union |= piece
            if trichotomy(c, b) != LEFT_INSIDE:
                defects.append({'relation': 'split', 'ball': b.label(), 'child': c.label()})
        pairwise = all(trichotomy(x, y) == DISJOINT
                       for i, x in enumerate(kids) for y in kids[i + 1:])
        if union != s or not pairwise or len(kids) != p:
            defects.append({'relation': 'split', 'ball': b.label()})
        splitting += 1

    whole = (1 << window.modulus) - 1
    for m in range(-depth, depth + 1):
        union = 0
        for b, s in zip(balls, residues):
            if b.coset_exp == m:
                union |= s
        if union != whole:
            defects.append({'relation': 'cover', 'level': m})

    for i in range(0, len(balls) - 2, 3):
        x, y, z = (b.center for b in balls[i:i + 3])
        if valuation(p, x - z) < min(valuation(p, x - y), valuation(p, y - z)):
            defects.append({'relation': 'ultrametric', 'triple': [str(x), str(y), str(z)]})

    LOGGER.debug('p=%d depth=%d: %d balls, %d defects', p, depth, len(balls), len(defects))
    return {'p': p, 'depth': depth, 'balls': len(balls), 'pairs': disjointness,
            'splits': splitting, 'passed': not defects, 'defects': defects}


def _ball_tree(root, depth):
    balls, parent = [root], [None]
    frontier = [0]
    for _ in range(depth):
        grown = []
        for node in frontier:
            for child in balls[node].children():
                balls.append(child)
                parent.append(node)
                grown.append(len(balls) - 1)
        frontier = grown
    return tree_from_parents(parent, [b.label() for b in balls]), balls


def zp_tree(p, depth):
    """Complete p-ary tree of the cosets a + p^k Z_p, k = 0..depth."""
    require_prime(p)
    if depth < 0:
        raise PreconditionError('Profundidade negativa', depth=depth)
    return _ball_tree(ball(p, 0, 0), depth)


def qp_ball_tree(p, vmin, depth):
    """One tree per Z_p-coset of p^vmin Z_p, each cut at level ``depth``."""
    require_prime(p)
    if not vmin <= 0 <= depth:
        raise PreconditionError('Esperado vmin ≤ 0 ≤ profundidade', vmin=vmin, depth=depth)
    unit = Fraction(p) ** vmin
    return [_ball_tree(ball(p, k * unit, 0), depth) for k in range(p ** -vmin)]


def verify_coset_tree(p, depth, bound=None):
    """Trichotomy against the residue oracle on every pair of cosets
    a + p^k Z_p with k ≤ depth, the balls of ``zp_tree(p, depth)``."""
    bound = Config.MAX_PADIC_DEPTH if bound is None else bound
    if depth > bound:
        raise TooLarge('Profundidade p-ádica', depth, bound)
    _, balls = zp_tree(p, depth)
    window = ResidueWindow(p, 0, depth)
    residues = [window.residues(b) for b in balls]
    defects, pairs = [], 0
    for i, b1 in enumerate(balls):
        for k in range(i, len(balls)):
            verdict, oracle = trichotomy(b1, balls[k]), relation_of(residues[i], residues[k])
            if verdict != oracle:
                defects.append({'pair': [b1.label(), balls[k].label()],
                                'verdict': verdict, 'oracle': oracle})
            pairs += 1
    LOGGER.debug('coset tree p=%d depth=%d: %d pairs, %d defects', p, depth, pairs, len(defects))
    return {'p': p, 'depth': depth, 'balls': len(balls), 'pairs': pairs,
            'passed': not defects, 'defects': defects}
