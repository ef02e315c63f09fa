from flask import Blueprint, jsonify

from routes import report_response, request_data
from utils import runners
from utils.loaders import base_from_json, frame_from_json

nonarch_bp = Blueprint('nonarch_bp', __name__)


def _frame_and_base(data):
    f = frame_from_json(data)
    return f, base_from_json(f, data)


@nonarch_bp.route('/check', methods=['POST'])
def check_base():
    f, base = _frame_and_base(request_data())
    return report_response(runners.nonarch_check(f, base))


@nonarch_bp.route('/tree-base', methods=['POST'])
def tree_base():
    f, base = _frame_and_base(request_data())
    return report_response(runners.nonarch_tree_base(f, base))


@nonarch_bp.route('/decompose', methods=['POST'])
def decompose():
    data = request_data()
    element = data.get('element')
    if not isinstance(element, str) or not element.strip():
        return jsonify({'erro': 'Campo element é obrigatório'}), 400
    f, base = _frame_and_base(data)
    return report_response(runners.nonarch_decompose(f, base, element.strip()))
