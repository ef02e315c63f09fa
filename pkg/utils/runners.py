"""Commands shared by the command line and the HTTP routes.

Each function computes one result, records its checks on a Report and
returns it; callers decide how to render it and which exit code to use.
"""
import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache

import networkx

from models.frame_model import (BaseSet, FiniteFrame, chain_frame, check_point_tree,
                                points, separation_report, spatial_reflection)
from models.nonarch_model import (build_tree_base, canonical_decomposition,
                                  chain_closure, check_nonarch_base,
                                  complemented_lemma, local_base_atoms,
                                  nonarch_violation, ortho_classify,
                                  tree_base_report)
from models.nucleus_model import (ClosureMap, assembly, closed_nucleus, enumerate_nuclei,
                                  identity_map, is_nucleus, open_nucleus,
                                  prenucleus_closure, quotient, verify_quot)
from models.padic_model import (parse_ball, qp_ball_tree, residue_relation,
                                trichotomy, verify_coset_tree, verify_relations, zp_tree)
from models.tree_model import (adjunction_violation, bar_induction_masks, baire,
                               branch_point_map, branch_space, canonical_form, cantor,
                               cb_rank, coverage_check, coverage_from, der_map, gbi_check,
                               ker_nucleus, koenig, level_decomposition, ler_nucleus,
                               operator_chain, quotient_presentation, rooted_tree_shapes,
                               subtree, surviving_nodes, tree_from_shape)
from utils.bitset import bits, contains, mask_of
from utils.corpus import DEFAULT_MAX_SIZE, composition, corpus, random_laminar_base
from utils.dot_export import hasse_dot, tree_dot
from utils.errors import (CrossCheckMismatch, NoNontrivialDecomposition,
                          NotChainClosed, NotNonArch, VerificationError)
from utils.report import Report

LOGGER = logging.getLogger(__name__)

GBI_TREE_NODES = 12
GBI_MAX_LEAVES = 4
SAMPLED_NUCLEI = 4
NUCLEI_MAX_FRAME = 16
ZP_ROUND_TRIP_LEAVES = 9
PADIC_WINDOW_BALLS = 512
RANDOM_BASES = 1000
ADJUNCTION_PAIRS = 2_000_000
CONDITIONS = ('bar_induction', 'tables_agree', 'fixed_family', 'spatial_quotient')

# the definition or result each record verifies, printed next to it
ANCHORS = {
    'frame': 'Definition: frame, finite meets distribute over joins',
    'heyting': 'Definition: Heyting implication, x ∧ a ≤ b iff x ≤ a → b',
    'points': 'Definition: points as morphisms to 2, completely prime filters, meet-irreducibles',
    'spatial': 'Definition: spatial frame, A ≅ O pt(A)',
    'separation': 'Proposition: zero-dimensional ⇒ regular ⇒ fit',
    'nonarch': 'Definition: non-archimedean base, basics are disjoint or comparable',
    'zero_dim': 'Example: a non-archimedean frame that is not zero-dimensional',
    'complemented': 'Lemma: a basic above a nonzero complemented element is complemented',
    'atoms': 'Lemma: a nonzero meet of local basics sits above an atom',
    'tree_base': 'Proposition: a chain-closed non-archimedean base is a tree under reverse order',
    'point_levels': 'Lemma: a point sends at most one basic per level to 1',
    'decomposition': 'Proposition: every element is a disjoint join of basics',
    'chain_closure': 'Lemma: chain closure keeps a non-archimedean base',
    'nuclei_kinds': 'Definition: closed nucleus u ∨ (-) and open nucleus u → (-)',
    'assembly': 'Proposition: the nuclei of a frame form a frame',
    'nucleus': 'Definition: nucleus, inflationary idempotent and meet-preserving',
    'prenucleus': 'Proposition: iterating a prenucleus reaches the least nucleus above it',
    'quotient_base': 'Proposition: quotients by nuclei keep a non-archimedean base',
    'adjunction': 'Lemma: k* is left adjoint to k_*',
    'rank': 'Definition: Cantor-Bendixson derivative and rank of a tree',
    'coverage': 'Definition: coverage rules for the branch-hitting relation',
    'operator_chain': 'Lemma: der ≤ ker ≤ ler',
    'gbi': 'Theorem: bar induction, der∞ = ker = ler and spatiality of the der quotient '
           'are equivalent',
    'gbi_base': 'Definition: tree base of the quotient frame',
    'eta': 'Theorem: a frame with a tree base is a quotient of its branch opens',
    'eta_injective': 'Theorem: η is injective exactly when bar induction holds',
    'branch_points': 'Proposition: maximal chains of a tree base give points',
    'padic_split': 'Definition: presentation of L(Z_p) by cosets split into p children',
    'padic_forest': 'Definition: presentation of L(Q_p) as a disjoint union of Z_p cosets',
    'padic_relations': 'Definition: disjointness, covering and splitting relations of p-adic balls',
    'padic_trichotomy': 'Definition: two p-adic balls are disjoint or nested',
    'padic_tree': 'Example: the Z_p coset tree is a tree base of its branch frame',
}


# -- frame ---------------------------------------------------------------------

def heyting_violation(f):
    for a in range(f.size):
        for b in range(f.size):
            implication = f.heyting(a, b)
            for x in range(f.size):
                if f.leq(f.meet(x, a), b) != f.leq(x, implication):
                    return [f.label(x), f.label(a), f.label(b)]
    return None


def distributivity_violation(f):
    for a in range(f.size):
        for x in range(f.size):
            for y in range(x + 1, f.size):
                if f.meet(a, f.join(x, y)) != f.join(f.meet(a, x), f.meet(a, y)):
                    return [f.label(a), f.label(x), f.label(y)]
    return None


def frame_check(f):
    report = Report('frame check', result=f.to_dict())
    witness = distributivity_violation(f)
    report.check('distributive lattice', witness is None, witness, ANCHORS['frame'])
    witness = heyting_violation(f)
    report.check('heyting adjunction', witness is None, witness, ANCHORS['heyting'])
    return report


def frame_points(f):
    report = Report('frame points')
    try:
        reflection = spatial_reflection(f)
    except CrossCheckMismatch as e:
        report.check('point descriptions agree', False, e.details.get('counts'),
                     ANCHORS['points'])
        return report
    report.result = reflection.to_dict()
    report.check('point descriptions agree', True, None, ANCHORS['points'])
    report.check('spatial', reflection.injective, None, ANCHORS['spatial'])
    return report


def frame_separations(f):
    result = separation_report(f)
    report = Report('frame separations', result=result)
    for name, holds in result['implications'].items():
        report.check(name.replace('_', ' '), holds, None, ANCHORS['separation'])
    return report


# -- nonarch -------------------------------------------------------------------

def nonarch_check(f, base):
    trichotomy_report = check_nonarch_base(f, base)
    report = Report('nonarch check', result=trichotomy_report.to_dict())
    if trichotomy_report.holds:
        items = list(base)
        report.result['ortho'] = [
            [f.label(x), f.label(y), ortho_classify(f, base, (1 << x) | (1 << y)).to_dict(f)]
            for i, x in enumerate(items) for y in items[i + 1:]]
    report.check('trichotomy', trichotomy_report.holds, trichotomy_report.violating_pair,
                 ANCHORS['nonarch'])
    if trichotomy_report.zero_counterexample:
        report.note('not zero-dimensional', [f.label_set(base.members)], ANCHORS['zero_dim'])
    lemma = complemented_lemma(f, base)
    report.check('complemented basics', not lemma, lemma or None, ANCHORS['complemented'])
    return report


def nonarch_tree_base(f, base):
    tb = build_tree_base(f, base)
    invariants = tree_base_report(f, base, tb)
    point_tree = check_point_tree(f, tb)
    report = Report('nonarch tree-base',
                    result={'tree': tb.to_dict(), 'dot': tree_dot(tb.tree),
                            'invariants': invariants, 'points': point_tree.to_dict()})
    report.check('tree base invariants', invariants['passed'], invariants,
                 ANCHORS['tree_base'])
    report.check('points through the tree', point_tree.passed, point_tree.violations or None,
                 ANCHORS['point_levels'])
    return report


def nonarch_decompose(f, base, label):
    a = f.index(label)
    pieces = canonical_decomposition(f, base, a)
    report = Report('nonarch decompose', result={'element': label,
                                                 'pieces': f.label_set(pieces)})
    disjoint = nonarch_violation(f, pieces) is None and all(
        f.meet(x, y) == f.bottom for x in bits(pieces) for y in bits(pieces) if x != y)
    report.check('pieces disjoint', disjoint, None, ANCHORS['decomposition'])
    report.check('pieces join to the element', f.join_all(bits(pieces)) == a, None,
                 ANCHORS['decomposition'])
    return report


# -- nuclei --------------------------------------------------------------------

def nuclei_enumerate(f, bound=None):
    nuclei = enumerate_nuclei(f, bound)
    tables = {n.table for n in nuclei}
    report = Report('nuclei enumerate')
    missing = [f.label(u) for u in range(f.size)
               if closed_nucleus(f, u).table not in tables
               or open_nucleus(f, u).table not in tables]
    report.check('closed and open nuclei present', not missing, missing or None,
                 ANCHORS['nuclei_kinds'])
    try:
        frame_of_nuclei = assembly(f, nuclei)
    except VerificationError as e:
        report.check('assembly is a frame', False, e.payload(), ANCHORS['assembly'])
        return report
    report.result = frame_of_nuclei.to_dict()
    lattice = frame_of_nuclei.frame
    ends = [nuclei[lattice.bottom].table, nuclei[lattice.top].table]
    expected = [tuple(range(f.size)), (f.top,) * f.size]
    # identity at the bottom, constant top at the top
    report.check('assembly is a frame', ends == expected, None if ends == expected else ends,
                 ANCHORS['assembly'])
    return report


def nuclei_quotient(f, j):
    holds, broken = is_nucleus(j)
    report = Report('nuclei quotient')
    report.check('nucleus', holds, broken, ANCHORS['nucleus'])
    if holds:
        report.result = quotient(f, j).to_dict()
    return report


def nuclei_close(f, c):
    closed, iterations = prenucleus_closure(c)
    report = Report('nuclei close', result={**closed.to_dict(), 'iterations': iterations})
    report.check('closure is a nucleus', is_nucleus(closed)[0], None, ANCHORS['prenucleus'])
    return report


def nuclei_verify_quot(f, base, bound=None):
    result = verify_quot(f, base, bound=bound)
    report = Report('nuclei verify-quot', result=result)
    failed = [e['nucleus'] for e in result['nuclei'] if not e['passed']]
    report.check('quotients keep a non-archimedean base', not failed, failed or None,
                 ANCHORS['quotient_base'])
    return report


# -- trees ---------------------------------------------------------------------

def tree_branches(tree):
    bs = branch_space(tree)
    report = Report('tree branches', result={**bs.to_dict(), 'dot': tree_dot(tree)})
    witness = adjunction_violation(bs)
    report.check('k* left adjoint to k_*', witness is None,
                 None if witness is None else [tree.label_set(witness[0]), list(bits(witness[1]))],
                 ANCHORS['adjunction'])
    return report


def _rank_by_table(tree):
    bs = branch_space(tree)
    der = der_map(tree, bs).table
    current, steps = bs.upsets.index(0), 0
    while der[current] != current:
        current, steps = der[current], steps + 1
    return steps


def tree_rank(tree):
    rank = cb_rank(tree)
    report = Report('tree rank', result={'rank': rank, 'height': tree.height})
    report.check('rank agrees with the upset table', rank == _rank_by_table(tree),
                 None, ANCHORS['rank'])
    return report


def tree_ker(tree):
    bs = branch_space(tree)
    ker = ker_nucleus(bs)
    report = Report('tree ker', result=ker.to_dict())
    coverage = coverage_check(coverage_from(bs, lambda u: bs.k_lower(bs.k_star(u))))
    report.check('ker coverage rules', coverage['passed'], coverage['violations'],
                 ANCHORS['coverage'])
    return report


def tree_ler(tree, j=None):
    bs = branch_space(tree)
    j = j or identity_map(bs.opens_frame)
    ler = ler_nucleus(bs, j)
    chain = operator_chain(bs, j)
    report = Report('tree ler', result={**ler.to_dict(), **chain})
    report.check('der ≤ ker ≤ ler', chain['der_le_ker'] and chain['ker_le_ler'],
                 chain['witness'] or None, ANCHORS['operator_chain'])
    return report


def tree_gbi(tree, j=None):
    bs = branch_space(tree)
    j = j or identity_map(bs.opens_frame)
    result = gbi_check(bs, j)
    report = Report('tree gbi', result=result)
    report.check('tree base of the quotient', result['presentation'], None,
                 ANCHORS['gbi_base'])
    report.check('bar induction conditions agree', result['equivalent'], None, ANCHORS['gbi'])
    return report


def tree_eta(f, base):
    tb = build_tree_base(f, base)
    presentation = quotient_presentation(f, tb)
    levels = {f.label(a): [[depth, tb.tree.label_set(mask)]
                           for depth, mask in level_decomposition(f, tb, a)]
              for a in range(f.size)}
    varpi = branch_point_map(f, tb)
    report = Report('tree eta', result={'presentation': presentation, 'levels': levels,
                                        'branch_points': varpi})
    report.check('eta is a surjective frame morphism recovering basics',
                 presentation['passed'], None, ANCHORS['eta'])
    report.check('eta injective', presentation['injective'], None, ANCHORS['eta_injective'])
    report.check('branch points continuous', varpi['continuous'], None,
                 ANCHORS['branch_points'])
    return report


# -- padic ---------------------------------------------------------------------

def padic_tree(p, depth):
    tree, balls = zp_tree(p, depth)
    report = Report('padic tree', result={'tree': tree.to_dict(), 'dot': tree_dot(tree),
                                          'balls': [b.to_dict() for b in balls]})
    siblings = all(trichotomy(balls[x], balls[y]) == 'Disjoint'
                   for n in range(tree.size) for i, x in enumerate(tree.children[n])
                   for y in tree.children[n][i + 1:])
    report.check('sibling balls disjoint', siblings, None, ANCHORS['padic_split'])
    return report


def padic_qp_tree(p, vmin, depth):
    forest = qp_ball_tree(p, vmin, depth)
    report = Report('padic tree', result={'forest': [
        {'tree': tree.to_dict(), 'balls': [b.to_dict() for b in balls]} for tree, balls in forest]})
    roots = [balls[0] for _, balls in forest]
    report.check('roots partition the ball', all(
        trichotomy(x, y) == 'Disjoint' for i, x in enumerate(roots) for y in roots[i + 1:]),
        None, ANCHORS['padic_forest'])
    return report


def padic_verify(p, depth, bound=None):
    result = verify_relations(p, depth, bound)
    report = Report('padic verify', result=result)
    report.check('ball relations', result['passed'], result['defects'][:10] or None,
                 ANCHORS['padic_relations'])
    return report


def padic_trichotomy(first, second):
    b1 = parse_ball(first)
    b2 = parse_ball(second, b1.p)
    verdict, oracle = trichotomy(b1, b2), residue_relation(b1, b2)
    report = Report('padic trichotomy',
                    result={'first': b1.to_dict(), 'second': b2.to_dict(), 'relation': verdict})
    report.check('residue oracle agrees', verdict == oracle, oracle, ANCHORS['padic_trichotomy'])
    return report


# -- theorem suite ---------------------------------------------------------------

def _frame_laws(instance):
    f = instance.frame
    witness = distributivity_violation(f) or heyting_violation(f)
    return None if witness is None else {instance.name: witness}


def _point_descriptions(instance):
    try:
        points(instance.frame)
    except CrossCheckMismatch as e:
        return {instance.name: e.details.get('counts')}
    return None


def _closure_and_decomposition(instance):
    f, base = instance.frame, instance.base
    if nonarch_violation(f, base.members) is not None:
        return None
    closure = chain_closure(f, base)
    for a in range(f.size):
        pieces = canonical_decomposition(f, closure, a)
        if f.join_all(bits(pieces)) != a or any(
                f.meet(x, y) != f.bottom for x in bits(pieces) for y in bits(pieces) if x < y):
            return {instance.name: f.label(a)}
    return None


def _tree_base_loop(instance):
    f, base = instance.frame, instance.base
    try:
        tb = build_tree_base(f, base)
    except (NotNonArch, NotChainClosed, NoNontrivialDecomposition):
        return None
    presentation = quotient_presentation(f, tb)
    spatial = spatial_reflection(f).injective
    point_tree = check_point_tree(f, tb)
    nontrivial = f.size > 1
    ok = presentation['passed'] and (presentation['injective'] or not nontrivial)
    ok = ok and spatial and (point_tree.passed or not nontrivial)
    return None if ok else {instance.name: {'presentation': presentation['passed'],
                                            'injective': presentation['injective'],
                                            'spatial': spatial,
                                            'point_tree': point_tree.passed}}


def _bar_induction(instance):
    """gbi_check on the frames themselves, every nucleus of a small corpus tree."""
    tree = instance.tree
    if bin(tree.leaves).count('1') > GBI_MAX_LEAVES:
        return None
    bs = branch_space(tree)
    failures = []
    for k, j in enumerate(enumerate_nuclei(bs.opens_frame)):
        result = gbi_check(bs, j)
        if not (result['equivalent'] and result['presentation']):
            failures.append(k)
        if j.table == tuple(range(bs.opens_frame.size)) and not all(
                result[c] for c in CONDITIONS):
            failures.append('identity')
    return {instance.name: failures} if failures else None


@lru_cache(maxsize=None)
def _shape_bar_induction(shape):
    return bar_induction_masks(tree_from_shape(shape))


@lru_cache(maxsize=None)
def _opens_nuclei(width):
    opens = FiniteFrame.from_family(range(1 << width))
    return tuple(j.table for j in enumerate_nuclei(opens))


def _leaf_basics(tree):
    """Basic open of each node as a mask over branches, branches in leaf order."""
    leaves = list(bits(tree.leaves))
    return [mask_of(i for i, leaf in enumerate(leaves) if contains(tree.descendants[n], leaf))
            for n in range(tree.size)]


def _induced_bar_induction(tree, basics, j):
    keep = surviving_nodes(basics, j)
    if not keep:
        return True
    values = _shape_bar_induction(canonical_form(subtree(tree, keep)[0]))
    return all(values[c] for c in CONDITIONS)


def _bar_induction_sweep(seed, max_size, coverage):
    """Every tree shape up to GBI_TREE_NODES nodes with the nuclei on its opens.

    Nuclei are enumerated when the opens frame fits in ``max_size``; larger
    opens get SAMPLED_NUCLEI seeded closed nuclei, the identity among them.
    """
    rng = random.Random(seed)
    limit = min(GBI_TREE_NODES, max_size)
    enumerable = min(max_size, NUCLEI_MAX_FRAME)
    counts = {'max_nodes': limit, 'trees': 0, 'exhaustive': 0, 'sampled': 0, 'nuclei': 0}
    failures = []
    for nodes in range(1, limit + 1):
        for k, tree in enumerate(rooted_tree_shapes(nodes)):
            name = f'shape-{nodes}-{k}'
            counts['trees'] += 1
            values = _shape_bar_induction(canonical_form(tree))
            if not (values['der_le_ker'] and all(values[c] for c in CONDITIONS)):
                failures.append({name: 'identity'})
            basics = _leaf_basics(tree)
            width = bin(tree.leaves).count('1')
            if 1 << width <= enumerable:
                counts['exhaustive'] += 1
                tables = _opens_nuclei(width)
            else:
                counts['sampled'] += 1
                closed = [0] + [rng.randrange(1, 1 << width) for _ in range(SAMPLED_NUCLEI - 1)]
                tables = [tuple(v | c for v in range(1 << width)) for c in closed]
            for number, table in enumerate(tables):
                counts['nuclei'] += 1
                if all(table[v] == v | table[0] for v in range(len(table))):
                    held = _induced_bar_induction(tree, basics, table.__getitem__)
                else:
                    bs = branch_space(tree)
                    result = gbi_check(bs, ClosureMap(bs.opens_frame, table))
                    held = result['equivalent'] and all(result[c] for c in CONDITIONS)
                if not held:
                    failures.append({name: number})
    if limit < GBI_TREE_NODES:
        counts['skipped_nodes'] = list(range(limit + 1, GBI_TREE_NODES + 1))
    coverage['bar_induction'] = counts
    return failures


def _tree_operators(instance):
    tree = instance.tree
    bs = branch_space(tree)
    if len(bs.upsets) * len(bs.opens) > ADJUNCTION_PAIRS:
        LOGGER.debug('skipping adjunction scan on %s', instance.name)
        return None
    if adjunction_violation(bs) is not None:
        return {instance.name: 'adjunction'}
    if len(bs.opens) <= 1 << GBI_MAX_LEAVES:
        chain = operator_chain(bs, identity_map(bs.opens_frame))
        if not (chain['der_le_ker'] and chain['ker_le_ler']):
            return {instance.name: chain['witness']}
    return None


def _quotients(instance):
    f, base = instance.frame, instance.base
    if f.size > NUCLEI_MAX_FRAME or nonarch_violation(f, base.members) is not None:
        return None
    result = verify_quot(f, base)
    return None if result['passed'] else {instance.name: [
        e['nucleus'] for e in result['nuclei'] if not e['passed']]}


def _run(pool, fn, instances):
    mapped = pool.map(fn, instances) if pool else map(fn, instances)
    return [w for w in mapped if w is not None]


def _cb_ranks():
    failures = [d for d in range(7) if cb_rank(cantor(d)) != d + 1]
    failures += [d for d in range(4) if _rank_by_table(cantor(d)) != d + 1]
    for make in (lambda d: baire(3, d), lambda d: koenig(2, d)):
        ranks = [cb_rank(make(d)) for d in range(5)]
        if any(b <= a for a, b in zip(ranks, ranks[1:])):
            failures.append(ranks)
    return failures


def _random_bases(seed):
    rng = random.Random(seed)
    failures = []
    for k in range(RANDOM_BASES):
        f, base = random_laminar_base(rng.randint(1, 4), rng)
        closure = chain_closure(f, base)
        if nonarch_violation(f, closure.members) is not None or closure.members != base.members:
            failures.append(k)
    return failures


def _zp_round_trip(p, depth):
    tree, _ = zp_tree(p, depth)
    if cb_rank(tree) != depth + 1:
        return {'rank': cb_rank(tree)}
    bs = branch_space(tree)
    f = bs.opens_frame
    if f.size != 1 << p ** depth:
        return {'opens': f.size}
    basics = BaseSet(f, mask_of(f.element_of(bs.basic_open[t]) for t in range(tree.size)))
    rebuilt = build_tree_base(f, basics).tree
    if not networkx.is_isomorphic(rebuilt.to_graph(), tree.to_graph()):
        return {'round_trip': False}
    return None


def _padic(instances, coverage):
    """Coset-tree trichotomy for every zp instance, plus the round trip and
    the relation window where they stay small."""
    failures = []
    done = {'coset_trees': [], 'round_trip': [], 'window': []}
    for instance in instances:
        p, depth = instance.p, instance.depth
        result = verify_coset_tree(p, depth)
        done['coset_trees'].append(instance.name)
        if not result['passed']:
            failures.append({instance.name: result['defects'][:5]})
        if p ** depth <= ZP_ROUND_TRIP_LEAVES:
            done['round_trip'].append(instance.name)
            broken = _zp_round_trip(p, depth)
            if broken is not None:
                failures.append({instance.name: broken})
        if sum(p ** (m + depth) for m in range(-depth, depth + 1)) <= PADIC_WINDOW_BALLS:
            done['window'].append(instance.name)
            result = verify_relations(p, depth)
            if not result['passed']:
                failures.append({instance.name: result['defects'][:5]})
    coverage['padic'] = done
    return failures


def _zero_dimension_counterexample():
    f = chain_frame(3)
    base = BaseSet(f, mask_of([1, 2]))
    report = check_nonarch_base(f, base)
    return report.holds and not report.zero_dimensional


def verify_paper(seed=0, max_size=None, jobs=1, timing=False):
    max_size = DEFAULT_MAX_SIZE if max_size is None else max_size
    instances = corpus(seed, max_size)
    frames = [i for i in instances if i.kind in ('frame', 'laminar')]
    trees = [i for i in instances if i.kind == 'tree']
    zps = [i for i in instances if i.kind == 'zp']
    coverage = {}
    report = Report('verify-paper', result={'seed': seed, 'max_size': max_size,
                                            'corpus': composition(instances),
                                            'coverage': coverage})
    clock = {}

    def timed(name, fn):
        start = time.perf_counter()
        value = fn()
        clock[name] = round(time.perf_counter() - start, 3)
        return value

    pool = ProcessPoolExecutor(max_workers=jobs) if jobs and jobs > 1 else None
    try:
        checks = [
            ('frame laws', ANCHORS['frame'], lambda: _run(pool, _frame_laws, frames)),
            ('point descriptions', ANCHORS['points'],
             lambda: _run(pool, _point_descriptions, frames)),
            ('chain closure and decomposition', ANCHORS['decomposition'],
             lambda: _run(pool, _closure_and_decomposition, frames)),
            ('random laminar bases', ANCHORS['chain_closure'], lambda: _random_bases(seed)),
            ('tree base presentation', ANCHORS['eta'],
             lambda: _run(pool, _tree_base_loop, frames)),
            ('bar induction', ANCHORS['gbi'], lambda: _run(pool, _bar_induction, trees)),
            ('bar induction on all small trees', ANCHORS['gbi'],
             lambda: _bar_induction_sweep(seed, max_size, coverage)),
            ('branch operators', ANCHORS['operator_chain'],
             lambda: _run(pool, _tree_operators, trees)),
            ('cantor-bendixson rank', ANCHORS['rank'], _cb_ranks),
            ('quotients by nuclei', ANCHORS['quotient_base'],
             lambda: _run(pool, _quotients, frames)),
            ('p-adic balls', ANCHORS['padic_trichotomy'], lambda: _padic(zps, coverage)),
        ]
        for name, anchor, fn in checks:
            failures = timed(name, fn)
            report.check(name, not failures, failures or None, anchor)
    finally:
        if pool:
            pool.shutdown()

    if timed('zero-dimensionality', _zero_dimension_counterexample):
        report.note('non-archimedean but not zero-dimensional', ['chain-3', ['c1', '1']],
                    ANCHORS['zero_dim'])
    else:
        report.check('non-archimedean but not zero-dimensional', False, None,
                     ANCHORS['zero_dim'])
    lemma = [f'{i.name}: {w}' for i in frames if nonarch_violation(i.frame, i.base.members) is None
             for w in complemented_lemma(i.frame, i.base)]
    report.check('complemented basics', not lemma, lemma or None, ANCHORS['complemented'])
    atoms = [i.name for i in frames if nonarch_violation(i.frame, i.base.members) is None
             and local_base_atoms(i.frame, i.base)]
    report.check('atoms under local bases', not atoms, atoms or None, ANCHORS['atoms'])
    if timing:
        report.timing = clock
    LOGGER.info('theorem suite: %s', 'ok' if report.passed else 'falhou')
    return report


def hasse_of(f):
    return hasse_dot(f.carrier)
