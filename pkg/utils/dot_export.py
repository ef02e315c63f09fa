import networkx
from networkx.drawing.nx_pydot import to_pydot


def _render(graph, name):
    dot = to_pydot(graph)
    dot.set_name(name)
    dot.set('rankdir', 'BT')
    return dot.to_string()


def hasse_dot(poset, name='hasse'):
    """Hasse diagram, smaller elements drawn lower."""
    graph = networkx.DiGraph()
    for i in range(poset.size):
        graph.add_node(f'n{i}', label=f'"{poset.label(i)}"')
    for i, j in poset.hasse_edges():
        graph.add_edge(f'n{i}', f'n{j}')
    return _render(graph, name)


def tree_dot(tree, name='tree'):
    """Tree with the root at the bottom and each node annotated with its level."""
    graph = networkx.DiGraph()
    for n in range(tree.size):
        graph.add_node(f'n{n}', label=f'"{tree.label(n)}\\nnível {tree.depth[n]}"')
    for n, up in enumerate(tree.parent):
        if up is not None:
            graph.add_edge(f'n{up}', f'n{n}')
    return _render(graph, name)
