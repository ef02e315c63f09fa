"""JSON input formats for posets, frames, bases, nuclei, trees and balls."""
import json
import logging

import networkx

from models.frame_model import (FiniteFrame, alexandroff_frame, base_from_labels,
                                chain_frame, default_base, powerset_frame)
from models.nucleus_model import ClosureMap
from models.padic_model import zp_tree
from models.poset_model import validate_poset
from models.tree_model import baire, branch_space, cantor, koenig, tree_from_parents
from utils.errors import NotAntisymmetric, ParseError, PreconditionError

LOGGER = logging.getLogger(__name__)


def load_json(source, path='<entrada>'):
    """Parse a file object, a path or raw text; an empty input is an error."""
    if hasattr(source, 'read'):
        path = getattr(source, 'name', path)
        text = source.read()
    else:
        text = source
    if not text or not text.strip():
        raise ParseError(path, 0, 'entrada vazia')
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(path, e.pos, e.msg)


def _field(data, key, path):
    if not isinstance(data, dict) or key not in data:
        raise ParseError(path, 0, f'campo obrigatório ausente: {key}')
    return data[key]


def _list(value, key, path):
    if not isinstance(value, list):
        raise ParseError(path, 0, f'{key} deve ser uma lista, não {type(value).__name__}')
    return value


def _labels(value, key, path):
    for k, name in enumerate(_list(value, key, path)):
        if not isinstance(name, str):
            raise ParseError(path, k, f'{key} deve conter rótulos de texto: {name!r}')
    return value


def _int(data, key, default, path):
    value = data.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(path, 0, f'{key} deve ser inteiro: {value!r}')
    return value


def poset_from_json(data, path='<entrada>'):
    """{"elements": [...], "leq": [[a, b], ...]}; the order is closed transitively."""
    elements = _labels(_field(data, 'elements', path), 'elements', path)
    pairs = _list(data.get('leq', []), 'leq', path)
    if len(set(elements)) != len(elements):
        raise ParseError(path, 0, 'elementos repetidos')
    position = {name: i for i, name in enumerate(elements)}
    graph = networkx.DiGraph()
    graph.add_nodes_from(range(len(elements)))
    for k, pair in enumerate(pairs):
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(x, str) and x in position for x in pair)):
            raise ParseError(path, k, f'par inválido em leq: {pair}')
        a, b = position[pair[0]], position[pair[1]]
        if a != b:
            graph.add_edge(a, b)
    if not networkx.is_directed_acyclic_graph(graph):
        cycle = networkx.find_cycle(graph)
        raise NotAntisymmetric(elements[cycle[0][0]], elements[cycle[0][1]])
    closure = networkx.transitive_closure_dag(graph)
    n = len(elements)
    leq = [[i == j or closure.has_edge(i, j) for j in range(n)] for i in range(n)]
    return validate_poset(leq, elements)


def tree_from_json(data, path='<entrada>'):
    if isinstance(data, dict) and 'generate' in data:
        kind = data['generate']
        depth = _int(data, 'depth', 0, path)
        width = _int(data, 'width', 2, path)
        if kind == 'cantor':
            return cantor(depth)
        if kind == 'baire':
            return baire(width, depth)
        if kind == 'koenig':
            return koenig(width, depth)
        if kind == 'zp':
            return zp_tree(_int(data, 'p', 2, path), depth)[0]
        raise ParseError(path, 0, f'gerador de árvore desconhecido: {kind}')
    nodes = _labels(_field(data, 'nodes', path), 'nodes', path)
    parents = _field(data, 'parent', path)
    if not isinstance(parents, dict):
        raise ParseError(path, 0, f'parent deve ser um objeto, não {type(parents).__name__}')
    position = {name: i for i, name in enumerate(nodes)}
    parent = []
    for name in nodes:
        up = parents.get(name)
        if up is not None and (not isinstance(up, str) or up not in position):
            raise ParseError(path, 0, f'pai desconhecido para {name}: {up}')
        parent.append(None if up is None else position[up])
    return tree_from_parents(parent, nodes)


def frame_from_json(data, path='<entrada>'):
    """Explicit {"elements", "leq"} or a {"generate": ...} fixture."""
    if isinstance(data, dict) and 'generate' in data:
        kind = data['generate']
        if kind == 'powerset':
            return powerset_frame(_int(data, 'n', 0, path))
        if kind == 'chain':
            return chain_frame(_int(data, 'n', 1, path))
        if kind == 'upsets':
            return alexandroff_frame(poset_from_json(_field(data, 'poset', path), path))
        if kind == 'branches':
            return branch_space(tree_from_json(_field(data, 'tree', path), path)).opens_frame
        raise ParseError(path, 0, f'gerador de frame desconhecido: {kind}')
    return FiniteFrame.from_poset(poset_from_json(data, path))


def base_from_json(frame, data, path='<entrada>'):
    """The optional "base" list of element labels; defaults to irreducibles plus top."""
    labels = data.get('base') if isinstance(data, dict) else None
    if labels is None:
        return default_base(frame)
    _labels(labels, 'base', path)
    try:
        return base_from_labels(frame, labels)
    except PreconditionError as e:
        raise ParseError(path, 0, str(e))


def nucleus_from_json(frame, data, path='<entrada>'):
    """{"table": [[a, j(a)], ...]} covering every element once."""
    rows = _list(_field(data, 'table', path), 'table', path)
    table = [None] * frame.size
    for k, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != 2:
            raise ParseError(path, k, f'linha inválida: {row}')
        try:
            a, image = frame.index(row[0]), frame.index(row[1])
        except PreconditionError as e:
            raise ParseError(path, k, str(e))
        table[a] = image
    missing = [frame.label(a) for a, v in enumerate(table) if v is None]
    if missing:
        raise ParseError(path, len(rows), f'elementos sem imagem: {missing}')
    return ClosureMap(frame, tuple(table))
