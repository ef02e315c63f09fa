from flask import Blueprint, jsonify

from routes import report_response, request_data
from utils import runners
from utils.loaders import base_from_json, frame_from_json, nucleus_from_json

nuclei_bp = Blueprint('nuclei_bp', __name__)


def _bound(data):
    bound = data.get('bound')
    if bound is not None and (not isinstance(bound, int) or bound < 1):
        return None, (jsonify({'erro': 'Campo bound deve ser um inteiro positivo'}), 400)
    return bound, None


@nuclei_bp.route('/enumerate', methods=['POST'])
def enumerate_nuclei():
    data = request_data()
    bound, error = _bound(data)
    if error:
        return error
    return report_response(runners.nuclei_enumerate(frame_from_json(data), bound))


@nuclei_bp.route('/quotient', methods=['POST'])
def quotient():
    data = request_data()
    f = frame_from_json(data)
    return report_response(runners.nuclei_quotient(f, nucleus_from_json(f, data)))


@nuclei_bp.route('/close', methods=['POST'])
def close():
    data = request_data()
    f = frame_from_json(data)
    return report_response(runners.nuclei_close(f, nucleus_from_json(f, data)))


@nuclei_bp.route('/verify-quot', methods=['POST'])
def verify_quot():
    data = request_data()
    bound, error = _bound(data)
    if error:
        return error
    f = frame_from_json(data)
    return report_response(runners.nuclei_verify_quot(f, base_from_json(f, data), bound))
