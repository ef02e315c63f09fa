import logging
from dataclasses import dataclass, field

from config import Config
from models.frame_model import FiniteFrame, base_violation, frame_morphism_violation
from models.poset_model import poset_from_up_masks
from utils.bitset import bits, mask_of
from utils.errors import (NotInflationary, NotMonotone, NotNonArch, NotNucleus,
                          NotPrenucleus, TooLarge, VerificationError)

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClosureMap:
    """Monotone inflationary self-map of a frame, stored as an index table."""

    frame: FiniteFrame
    table: tuple

    def __post_init__(self):
        f = self.frame
        if len(self.table) != f.size:
            raise VerificationError('Tabela com tamanho diferente do frame',
                                    expected=f.size, got=len(self.table))
        for a in range(f.size):
            if not f.leq(a, self.table[a]):
                raise NotInflationary(f.label(a))
        for a in range(f.size):
            for b in bits(f.carrier.up[a]):
                if not f.leq(self.table[a], self.table[b]):
                    raise NotMonotone(f.label(a), f.label(b))

    def __call__(self, a):
        return self.table[a]

    @property
    def fixed(self):
        return mask_of(a for a in range(self.frame.size) if self.table[a] == a)

    def to_dict(self):
        f = self.frame
        return {'table': [[f.label(a), f.label(self.table[a])] for a in range(f.size)]}


def identity_map(f):
    return ClosureMap(f, tuple(range(f.size)))


def constant_top(f):
    return ClosureMap(f, (f.top,) * f.size)


def closed_nucleus(f, u):
    return ClosureMap(f, tuple(f.join(u, a) for a in range(f.size)))


def open_nucleus(f, u):
    return ClosureMap(f, tuple(f.heyting(u, a) for a in range(f.size)))


def nucleus_violation(f, table):
    """First broken nucleus axiom as (axiom, witness labels), or None."""
    for a in range(f.size):
        for b in bits(f.carrier.up[a]):
            if not f.leq(table[a], table[b]):
                return 'monotone', [f.label(a), f.label(b)]
    for a in range(f.size):
        if not f.leq(a, table[a]):
            return 'inflationary', [f.label(a)]
    for a in range(f.size):
        for b in range(a + 1, f.size):
            if not f.leq(f.meet(table[a], table[b]), table[f.meet(a, b)]):
                return 'meet', [f.label(a), f.label(b)]
    for a in range(f.size):
        if table[table[a]] != table[a]:
            return 'idempotent', [f.label(a)]
    return None


def is_nucleus(c):
    """(holds, first violated axiom or None)."""
    broken = nucleus_violation(c.frame, c.table)
    return broken is None, broken


def prenucleus_closure(c):
    """Least nucleus above a prenucleus, with the number of iterations.

    The count is the least k with c^k = c^(k+1), starting from the identity.
    """
    f = c.frame
    for a in range(f.size):
        for b in range(a + 1, f.size):
            if not f.leq(f.meet(c(a), c(b)), c(f.meet(a, b))):
                raise NotPrenucleus(f.label(a), f.label(b))
    current = tuple(range(f.size))
    iterations = 0
    while True:
        step = tuple(c.table[x] for x in current)
        if step == current:
            break
        current = step
        iterations += 1
    LOGGER.debug('prenucleus closure stabilised after %d iterations', iterations)
    broken = nucleus_violation(f, current)
    if broken is not None:
        raise NotNucleus(*broken)
    return ClosureMap(f, current), iterations


@dataclass
class QuotientFrame:
    parent: FiniteFrame
    nucleus: ClosureMap
    fixed: int
    frame: FiniteFrame
    star: tuple  # parent element ↦ element of ``frame``
    elements: list = field(default_factory=list)  # frame element ↦ parent element

    def to_dict(self):
        return {
            'fixed': self.parent.label_set(self.fixed),
            'frame': self.frame.to_dict(),
            'star': {self.parent.label(a): self.frame.label(self.star[a])
                     for a in range(self.parent.size)},
        }


def quotient(f, j):
    broken = nucleus_violation(f, j.table)
    if broken is not None:
        raise NotNucleus(*broken)
    elements = list(bits(j.fixed))
    frame = FiniteFrame.from_poset(f.carrier.restrict(elements))
    position = {a: i for i, a in enumerate(elements)}
    star = tuple(position[j(a)] for a in range(f.size))
    broken = frame_morphism_violation(f, frame, star)
    if broken is not None:
        raise VerificationError(f'j* não é morfismo de frames ({broken[0]})',
                                law=broken[0], witness=broken[1])
    if set(star) != set(range(frame.size)):
        raise VerificationError('j* não é sobrejetiva')
    return QuotientFrame(f, j, j.fixed, frame, star, elements)


def _meet_pairs(f):
    """meet_pairs[x]: pairs (b, c), both strictly above x, with b ∧ c = x."""
    pairs = [[] for _ in range(f.size)]
    for b in range(f.size):
        for c in range(b + 1, f.size):
            m = f.meet(b, c)
            if m != b and m != c:
                pairs[m].append((b, c))
    return pairs


def enumerate_nuclei(f, bound=None):
    """All nuclei on ``f`` in lexicographic table order.

    Elements are assigned top-down starting from j(1) = 1; monotonicity,
    idempotence and meet-preservation prune each choice.
    """
    bound = Config.MAX_NUCLEI_SIZE if bound is None else bound
    if f.size > bound:
        raise TooLarge('Frame', f.size, bound)
    up = f.carrier.up
    order = sorted(range(f.size), key=lambda a: (bin(up[a]).count('1'), a))
    meet_pairs = _meet_pairs(f)
    table = [None] * f.size
    found = []

    def candidates(a):
        for v in bits(up[a]):
            if v != a and table[v] != v:
                continue
            if any(table[b] is not None and not f.leq(v, table[b]) for b in bits(up[a])):
                continue
            if any(f.meet(table[b], table[c]) != v for b, c in meet_pairs[a]):
                continue
            yield v

    def assign(k):
        if k == len(order):
            found.append(tuple(table))
            return
        a = order[k]
        for v in candidates(a):
            table[a] = v
            assign(k + 1)
            table[a] = None

    assign(0)
    found.sort()
    result = []
    for t in found:
        broken = nucleus_violation(f, t)
        if broken is not None:
            raise NotNucleus(*broken)
        result.append(ClosureMap(f, t))
    LOGGER.debug('enumerated %d nuclei on a frame of %d elements', len(result), f.size)
    return result


def nucleus_join(f, j, k):
    """Least nucleus above j and k: iterate the pointwise join to a fixpoint."""
    current = tuple(f.join(j(a), k(a)) for a in range(f.size))
    while True:
        step = tuple(f.join(j(x), k(x)) for x in current)
        if step == current:
            return current
        current = step


@dataclass
class Assembly:
    frame: FiniteFrame
    nuclei: list

    def to_dict(self):
        return {'size': len(self.nuclei),
                'nuclei': [n.to_dict() for n in self.nuclei],
                'frame': self.frame.to_dict()}


def assembly(f, nuclei=None, bound=None):
    """N(A) as a frame, pointwise order; joins cross-checked by iteration."""
    nuclei = nuclei if nuclei is not None else enumerate_nuclei(f, bound)
    tables = [n.table for n in nuclei]
    position = {t: i for i, t in enumerate(tables)}

    def below(s, t):
        return all(f.leq(s[a], t[a]) for a in range(f.size))

    up = [mask_of(i for i, t in enumerate(tables) if below(s, t)) for s in tables]
    frame = FiniteFrame.from_poset(poset_from_up_masks(up, [f'j{i}' for i in range(len(tables))]))
    for i, s in enumerate(tables):
        for k in range(i + 1, len(tables)):
            t = tables[k]
            pointwise_meet = tuple(f.meet(s[a], t[a]) for a in range(f.size))
            if position.get(pointwise_meet) != frame.meet(i, k):
                raise VerificationError('Meet em N(A) difere do meet ponto a ponto',
                                        pair=[f'j{i}', f'j{k}'])
            if position.get(nucleus_join(f, nuclei[i], nuclei[k])) != frame.join(i, k):
                raise VerificationError('Join em N(A) difere do fecho do join ponto a ponto',
                                        pair=[f'j{i}', f'j{k}'])
    return Assembly(frame, nuclei)


def verify_quot(f, base, nuclei=None, bound=None):
    """For every nucleus j: are the nonzero images j(b) a non-archimedean base of A_j?"""
    from models.nonarch_model import nonarch_violation

    clash = nonarch_violation(f, base.members)
    if clash is not None:
        raise NotNonArch([f.label(x) for x in clash])
    nuclei = nuclei if nuclei is not None else enumerate_nuclei(f, bound)
    entries = []
    for number, j in enumerate(nuclei):
        q = quotient(f, j)
        zero = q.star[f.bottom]
        witness = mask_of(q.star[b] for b in bits(base.members) if q.star[b] != zero)
        # the one-element frame has the empty base
        if q.frame.size == 1:
            witness = 0
        not_a_base = base_violation(q.frame, witness)
        clash = nonarch_violation(q.frame, witness)
        passed = not_a_base is None and clash is None
        entry = {'nucleus': f'j{number}', 'table': j.to_dict()['table'],
                 'quotient_size': q.frame.size, 'passed': passed,
                 'witness_base': q.frame.label_set(witness)}
        if not_a_base is not None:
            entry['not_a_base'] = q.frame.label(not_a_base)
        if clash is not None:
            entry['violation'] = [q.frame.label(x) for x in clash]
        entries.append(entry)
    return {'passed': all(e['passed'] for e in entries), 'nuclei': entries}
