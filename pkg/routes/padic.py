from flask import Blueprint, jsonify, request

from routes import report_response, request_data
from utils import runners

padic_bp = Blueprint('padic_bp', __name__)


def _int_args(*names):
    values = [request.args.get(name, type=int) for name in names]
    missing = [name for name, value in zip(names, values) if value is None]
    return values, missing


@padic_bp.route('/tree', methods=['GET'])
def tree():
    (p, depth), missing = _int_args('p', 'depth')
    if missing:
        return jsonify({'erro': f'Parâmetros inteiros obrigatórios: {", ".join(missing)}'}), 400
    vmin = request.args.get('vmin', type=int)
    if vmin is None:
        return report_response(runners.padic_tree(p, depth))
    return report_response(runners.padic_qp_tree(p, vmin, depth))


@padic_bp.route('/verify', methods=['GET'])
def verify():
    (p, depth), missing = _int_args('p', 'depth')
    if missing:
        return jsonify({'erro': f'Parâmetros inteiros obrigatórios: {", ".join(missing)}'}), 400
    return report_response(runners.padic_verify(p, depth))


@padic_bp.route('/trichotomy', methods=['POST'])
def trichotomy():
    data = request_data()
    for field in ('first', 'second'):
        if not isinstance(data.get(field), str) or not data[field].strip():
            return jsonify({'erro': f'Campo {field} é obrigatório'}), 400
    return report_response(runners.padic_trichotomy(data['first'].strip(), data['second'].strip()))
