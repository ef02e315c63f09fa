import pytest


POWERSET2 = {'generate': 'powerset', 'n': 2}
DIAMOND = {'elements': ['0', 'a', 'b', '1'],
           'leq': [['0', 'a'], ['0', 'b'], ['a', '1'], ['b', '1']]}
CHERRY = {'nodes': ['r', 'x', 'y'], 'parent': {'r': None, 'x': 'r', 'y': 'r'}}


def test_index(client):
    response = client.get('/')
    assert response.status_code == 200
    assert 'funcionando' in response.get_json()['mensagem']


def test_frame_check(client):
    response = client.post('/frames/check', json=DIAMOND)
    assert response.status_code == 200
    data = response.get_json()
    assert data['command'] == 'frame check'
    assert data['passed'] is True


def test_frame_without_elements_is_a_parse_error(client):
    response = client.post('/frames/check', json={'leq': []})
    assert response.status_code == 400
    data = response.get_json()
    assert data['tipo'] == 'ParseError'
    assert 'elements' in data['erro']


def test_body_must_be_an_object(client):
    response = client.post('/frames/points', json=[1, 2])
    assert response.status_code == 400
    assert 'erro' in response.get_json()


def test_cyclic_order_is_rejected(client):
    response = client.post('/frames/check', json={'elements': ['a', 'b'],
                                                  'leq': [['a', 'b'], ['b', 'a']]})
    assert response.status_code == 400
    assert response.get_json()['tipo'] == 'NotAntisymmetric'


def test_separations(client):
    response = client.post('/frames/separations', json={'generate': 'chain', 'n': 3})
    assert response.status_code == 200
    assert response.get_json()['result']['fit'] is False


def test_nonarch_routes(client):
    check = client.post('/nonarch/check', json={**POWERSET2, 'base': ['{1}', '{2}', '{1,2}']})
    assert check.status_code == 200
    assert check.get_json()['passed'] is True
    missing = client.post('/nonarch/decompose', json=POWERSET2)
    assert missing.status_code == 400
    assert missing.get_json()['erro'] == 'Campo element é obrigatório'
    pieces = client.post('/nonarch/decompose', json={**DIAMOND, 'element': '1'})
    assert pieces.get_json()['result']['pieces'] == ['1']


def test_tree_base_precondition(client):
    response = client.post('/nonarch/tree-base',
                           json={'generate': 'chain', 'n': 3, 'base': ['c1', '1']})
    assert response.status_code == 400
    assert response.get_json()['tipo'] == 'NoNontrivialDecomposition'


def test_nuclei_routes(client):
    enumerated = client.post('/nuclei/enumerate', json=POWERSET2)
    assert enumerated.status_code == 200
    too_large = client.post('/nuclei/enumerate', json={**POWERSET2, 'bound': 2})
    assert too_large.status_code == 413
    bad_bound = client.post('/nuclei/enumerate', json={**POWERSET2, 'bound': 'x'})
    assert bad_bound.status_code == 400
    table = [['{}', '{1}'], ['{1}', '{1}'], ['{2}', '{1,2}'], ['{1,2}', '{1,2}']]
    quotient = client.post('/nuclei/quotient', json={**POWERSET2, 'table': table})
    assert quotient.get_json()['passed'] is True


def test_tree_routes(client):
    rank = client.post('/trees/rank', json=CHERRY)
    assert rank.get_json()['result']['rank'] == 2
    gbi = client.post('/trees/gbi', json={'generate': 'cantor', 'depth': 1})
    assert gbi.get_json()['result']['equivalent'] is True
    orphan = client.post('/trees/rank', json={'nodes': ['r', 'x'], 'parent': {'x': 'z'}})
    assert orphan.status_code == 400


@pytest.mark.parametrize('route, body, field', [
    ('/trees/rank', {'nodes': ['r', 'x'], 'parent': [None, 'r']}, 'parent'),
    ('/trees/rank', {'nodes': 'rx', 'parent': {'x': 'r'}}, 'nodes'),
    ('/trees/rank', {'nodes': ['r', 1], 'parent': {}}, 'nodes'),
    ('/trees/rank', {'generate': 'cantor', 'depth': '2'}, 'depth'),
    ('/frames/check', {'elements': {'a': 1}, 'leq': []}, 'elements'),
    ('/frames/check', {'elements': ['a', 'b'], 'leq': {'a': 'b'}}, 'leq'),
    ('/frames/check', {'elements': ['a', 'b'], 'leq': ['ab']}, 'leq'),
])
def test_wrong_field_types_are_parse_errors(client, route, body, field):
    response = client.post(route, json=body)
    assert response.status_code == 400
    data = response.get_json()
    assert data['tipo'] == 'ParseError'
    assert field in data['erro']


def test_padic_tree_and_verify(client):
    tree = client.get('/padic/tree?p=2&depth=2')
    assert tree.status_code == 200
    assert len(tree.get_json()['result']['tree']['nodes']) == 7
    verify = client.get('/padic/verify?p=2&depth=1')
    assert verify.get_json()['passed'] is True
    forest = client.get('/padic/tree?p=2&depth=1&vmin=-1')
    assert len(forest.get_json()['result']['forest']) == 2


def test_padic_missing_parameter(client):
    response = client.get('/padic/tree?p=2')
    assert response.status_code == 400
    assert response.get_json()['erro'] == 'Parâmetros inteiros obrigatórios: depth'


def test_padic_composite_prime(client):
    response = client.get('/padic/verify?p=4&depth=1')
    assert response.status_code == 400


def test_padic_trichotomy(client):
    response = client.post('/padic/trichotomy', json={'first': '2^1*Zp', 'second': '2^1*Zp+1'})
    assert response.status_code == 200
    assert response.get_json()['result']['relation'] == 'Disjoint'
    missing = client.post('/padic/trichotomy', json={'first': '2^1*Zp'})
    assert missing.status_code == 400


def test_reports_are_persisted_and_listed(client):
    created = client.post('/relatorios/', json={'seed': 1, 'max_size': 1})
    assert created.status_code == 201
    run = created.get_json()
    assert run['passed'] is True
    assert run['payload']['result']['corpus'] == {'frame': 2, 'tree': 1, 'zp': 3}
    assert run['payload']['command'] == 'verify-paper'
    assert all(r['anchor'] for r in run['payload']['records'])
    client.post('/relatorios/', json={'max_size': 1})

    page = client.get('/relatorios/?pagina=1&tamanho=1').get_json()
    assert page['total'] == 2
    assert page['paginas'] == 2
    assert page['dados'][0]['id'] == run['id']
    assert 'payload' not in page['dados'][0]

    fetched = client.get(f'/relatorios/{run["id"]}')
    assert fetched.status_code == 200
    assert fetched.get_json()['seed'] == 1


def test_report_validation_and_missing_run(client):
    assert client.post('/relatorios/', json={'max_size': 0}).status_code == 400
    assert client.post('/relatorios/', json={'seed': 'a'}).status_code == 400
    assert client.get('/relatorios/999').status_code == 404
