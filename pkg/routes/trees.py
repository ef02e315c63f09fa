from flask import Blueprint

from models.tree_model import branch_space
from routes import report_response, request_data
from utils import runners
from utils.loaders import base_from_json, frame_from_json, nucleus_from_json, tree_from_json

trees_bp = Blueprint('trees_bp', __name__)


def _tree_and_nucleus(data):
    tree = tree_from_json(data)
    if 'table' not in data:
        return tree, None
    return tree, nucleus_from_json(branch_space(tree).opens_frame, data)


@trees_bp.route('/branches', methods=['POST'])
def branches():
    return report_response(runners.tree_branches(tree_from_json(request_data())))


@trees_bp.route('/rank', methods=['POST'])
def rank():
    return report_response(runners.tree_rank(tree_from_json(request_data())))


@trees_bp.route('/ker', methods=['POST'])
def ker():
    return report_response(runners.tree_ker(tree_from_json(request_data())))


@trees_bp.route('/ler', methods=['POST'])
def ler():
    return report_response(runners.tree_ler(*_tree_and_nucleus(request_data())))


@trees_bp.route('/gbi', methods=['POST'])
def gbi():
    return report_response(runners.tree_gbi(*_tree_and_nucleus(request_data())))


@trees_bp.route('/eta', methods=['POST'])
def eta():
    data = request_data()
    f = frame_from_json(data)
    return report_response(runners.tree_eta(f, base_from_json(f, data)))
