"""Deterministic corpus of small instances for the theorem suite."""
import logging
import random
from dataclasses import dataclass

from models.frame_model import BaseSet, alexandroff_frame, chain_frame, default_base, powerset_frame
from models.poset_model import upset_count
from models.tree_model import branch_space, random_tree, rooted_tree_shapes
from utils.bitset import full, mask_of

LOGGER = logging.getLogger(__name__)

DEFAULT_MAX_SIZE = 64
FRAME_SHAPE_NODES = 6
ALEXANDROFF_SHAPE_NODES = 4
TREE_SHAPE_NODES = 7
RANDOM_TREES = 10
LAMINAR_BASES = 20
ZP_PRIMES = (2, 3, 5)
ZP_MAX_DEPTH = 4


@dataclass
class Instance:
    kind: str  # frame | tree | zp | laminar
    name: str
    size: int
    frame: object = None
    base: object = None
    tree: object = None
    p: int = None
    depth: int = None


def singleton_base(f, n):
    """Singletons plus the top of the powerset of n points."""
    members = mask_of(1 << i for i in range(n)) | (1 << f.top if n else 0)
    return BaseSet(f, members)


def random_laminar_base(n, rng):
    """Random nested family on n points containing all singletons and the top."""
    family = {full(n), *(1 << i for i in range(n))}

    def split(block):
        items = [i for i in range(n) if block >> i & 1]
        if len(items) < 3:
            return
        parts = [0] * rng.randint(2, len(items) - 1)
        rng.shuffle(items)
        for k, i in enumerate(items):
            parts[k if k < len(parts) else rng.randrange(len(parts))] |= 1 << i
        for part in parts:
            family.add(part)
            if rng.random() < 0.5:
                split(part)

    if n:
        split(full(n))
    f = powerset_frame(n)
    return f, BaseSet(f, mask_of(sorted(family)))


def _frames(max_size):
    for n in range(5):
        if 1 << n <= max_size:
            f = powerset_frame(n)
            yield Instance('frame', f'powerset-{n}', f.size, f, singleton_base(f, n))
    for n in range(1, 6):
        if n <= max_size:
            f = chain_frame(n)
            yield Instance('frame', f'chain-{n}', n, f, default_base(f))
    for nodes in range(1, FRAME_SHAPE_NODES + 1):
        for k, tree in enumerate(rooted_tree_shapes(nodes)):
            size = 1 << bin(tree.leaves).count('1')
            if size > max_size:
                continue
            bs = branch_space(tree)
            f = bs.opens_frame
            basics = mask_of(f.element_of(bs.basic_open[t]) for t in range(tree.size))
            yield Instance('frame', f'branches-{nodes}-{k}', size, f, BaseSet(f, basics), tree)
    for nodes in range(1, ALEXANDROFF_SHAPE_NODES + 1):
        for k, tree in enumerate(rooted_tree_shapes(nodes)):
            size = upset_count(tree.as_poset())
            if size > max_size:
                continue
            f = alexandroff_frame(tree.as_poset())
            yield Instance('frame', f'upsets-{nodes}-{k}', size, f, default_base(f), tree)


def _trees(rng, max_size):
    for nodes in range(1, TREE_SHAPE_NODES + 1):
        if nodes > max_size:
            continue
        for k, tree in enumerate(rooted_tree_shapes(nodes)):
            yield Instance('tree', f'shape-{nodes}-{k}', nodes, tree=tree)
    for k in range(RANDOM_TREES):
        nodes = rng.randint(8, 15)
        tree = random_tree(nodes, rng)
        if nodes <= max_size:
            yield Instance('tree', f'random-{k}', nodes, tree=tree)


def _zp(max_size):
    # size counts levels of the coset tree
    for p in ZP_PRIMES:
        for depth in range(ZP_MAX_DEPTH + 1):
            size = depth + 1
            if size <= max_size:
                yield Instance('zp', f'zp-{p}-{depth}', size, p=p, depth=depth)


def _laminar(rng, max_size):
    for k in range(LAMINAR_BASES):
        n = rng.randint(1, 4)
        f, base = random_laminar_base(n, rng)
        if f.size <= max_size:
            yield Instance('laminar', f'laminar-{k}', f.size, f, base)


def corpus(seed=0, max_size=DEFAULT_MAX_SIZE):
    """Instances in a fixed order; the same seed always gives the same corpus."""
    rng = random.Random(seed)
    instances = [*_frames(max_size), *_trees(rng, max_size), *_zp(max_size),
                 *_laminar(rng, max_size)]
    LOGGER.debug('corpus seed=%d max_size=%d: %d instances', seed, max_size, len(instances))
    return instances


def composition(instances):
    counts = {}
    for instance in instances:
        counts[instance.kind] = counts.get(instance.kind, 0) + 1
    return counts
