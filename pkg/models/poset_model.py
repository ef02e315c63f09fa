import logging
from dataclasses import dataclass
from functools import cached_property

from config import Config
from utils.bitset import bits, contains, full, mask_of
from utils.errors import (NotAntisymmetric, NotReflexive, NotTransitive,
                          PreconditionError, TooLarge)

LOGGER = logging.getLogger(__name__)

# Subsets of a poset are plain ints: bit i set <=> element i is a member.
SubsetMask = int


@dataclass(frozen=True)
class Poset:
    """Finite poset on 0..size-1; ``up[i]`` is the mask of all j with i <= j."""

    size: int
    up: tuple
    labels: tuple

    def leq(self, i, j):
        return contains(self.up[i], j)

    def label(self, i):
        return self.labels[i]

    def index(self, label):
        try:
            return self._label_index[label]
        except KeyError:
            raise PreconditionError(f'Elemento desconhecido: {label}', element=label)

    @cached_property
    def _label_index(self):
        return {name: i for i, name in enumerate(self.labels)}

    @cached_property
    def down(self):
        rows = [0] * self.size
        for i in range(self.size):
            for j in bits(self.up[i]):
                rows[j] |= 1 << i
        return tuple(rows)

    @cached_property
    def covers(self):
        """``covers[i]``: immediate successors of i (Hasse diagram)."""
        rows = []
        for i in range(self.size):
            strict = self.up[i] & ~(1 << i)
            rows.append(mask_of(j for j in bits(strict)
                                if self.down[j] & strict == 1 << j))
        return tuple(rows)

    @cached_property
    def minimal(self):
        return mask_of(i for i in range(self.size) if self.down[i] == 1 << i)

    @cached_property
    def maximal(self):
        return mask_of(i for i in range(self.size) if self.up[i] == 1 << i)

    def is_chain(self, mask):
        return all(mask & ~(self.up[i] | self.down[i]) == 0 for i in bits(mask))

    def is_upset(self, mask):
        return all(self.up[i] & ~mask == 0 for i in bits(mask))

    def is_forest(self):
        """Every principal downset is a chain."""
        return all(self.is_chain(self.down[i]) for i in range(self.size))

    def is_tree(self):
        return self.size > 0 and self.is_forest() and bin(self.minimal).count('1') == 1

    def restrict(self, indices):
        """Sub-poset on ``indices`` (kept in the given order)."""
        indices = list(indices)
        position = {old: new for new, old in enumerate(indices)}
        up = tuple(mask_of(position[j] for j in bits(self.up[i]) if j in position)
                   for i in indices)
        return Poset(len(indices), up, tuple(self.labels[i] for i in indices))

    def hasse_edges(self):
        return [(i, j) for i in range(self.size) for j in bits(self.covers[i])]

    def to_dict(self):
        return {
            'elements': list(self.labels),
            'leq': [[self.labels[i], self.labels[j]] for i, j in self.hasse_edges()],
        }


@dataclass(frozen=True)
class UpsetFamily:
    poset: Poset
    members: tuple

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @property
    def count(self):
        return len(self.members)

    @cached_property
    def _position(self):
        return {mask: i for i, mask in enumerate(self.members)}

    def index(self, mask):
        return self._position[mask]

    def __contains__(self, mask):
        return mask in self._position


def poset_from_up_masks(up, labels=None):
    """Build a Poset from already validated up-set rows (internal generators)."""
    labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(len(up)))
    return Poset(len(up), tuple(up), labels)


def validate_poset(leq, labels=None):
    """Check that a square boolean table is a partial order.

    The first violating element, pair or triple (in index order) is reported.
    """
    n = len(leq)
    if any(len(row) != n for row in leq):
        raise PreconditionError('Tabela de ordem não é quadrada')
    labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
    up = [mask_of(j for j in range(n) if leq[i][j]) for i in range(n)]

    for i in range(n):
        if not contains(up[i], i):
            raise NotReflexive(labels[i])
    for i in range(n):
        for j in range(i + 1, n):
            if contains(up[i], j) and contains(up[j], i):
                raise NotAntisymmetric(labels[i], labels[j])
    for i in range(n):
        for j in bits(up[i]):
            missing = up[j] & ~up[i]
            if missing:
                k = next(bits(missing))
                raise NotTransitive(labels[i], labels[j], labels[k])
    return Poset(n, tuple(up), labels)


def filter_upsets(p):
    """Brute force: every subset, kept when upward closed."""
    return [mask for mask in range(1 << p.size) if p.is_upset(mask)]


def _forest_upsets(p):
    def subtree(r):
        combos = [0]
        for child in bits(p.covers[r]):
            combos = [a | b for a in combos for b in subtree(child)]
        combos.append(p.up[r])
        return combos

    result = [0]
    for root in bits(p.minimal):
        result = [a | b for a in result for b in subtree(root)]
    return result


def upset_count(p):
    """|U(P)| for forests via 1 + prod(children) per root."""
    if not p.is_forest():
        raise PreconditionError('Contagem por recorrência exige uma floresta')

    def subtree(r):
        total = 1
        for child in bits(p.covers[r]):
            total *= subtree(child)
        return total + 1

    total = 1
    for root in bits(p.minimal):
        total *= subtree(root)
    return total


def enumerate_upsets(p, bound=None):
    """All upsets of ``p`` in canonical (numeric mask) order.

    Forests use the product recurrence at any size; other posets are filtered
    from all subsets and rejected above ``bound`` elements.
    """
    bound = Config.MAX_POSET_SIZE if bound is None else bound
    if p.is_forest():
        members = _forest_upsets(p)
    elif p.size <= bound:
        members = filter_upsets(p)
    else:
        raise TooLarge('Poset', p.size, bound)
    LOGGER.debug('enumerated %d upsets on %d elements', len(members), p.size)
    return UpsetFamily(p, tuple(sorted(members)))


def maximal_chains(p):
    """Maximal chains = Hasse paths from a minimal to a maximal element."""
    chains = []

    def extend(i, acc):
        acc |= 1 << i
        if not p.covers[i]:
            chains.append(acc)
            return
        for j in bits(p.covers[i]):
            extend(j, acc)

    for start in bits(p.minimal):
        extend(start, 0)
    return sorted(chains)


def chains_through(p, required, excluded):
    if contains(excluded, required):
        raise PreconditionError('Elemento exigido pertence ao conjunto excluído',
                                element=p.label(required))
    return [c for c in maximal_chains(p) if contains(c, required) and not c & excluded]


def whole(p):
    return full(p.size)
