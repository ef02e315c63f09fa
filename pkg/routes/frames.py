from flask import Blueprint

from routes import report_response, request_data
from utils import runners
from utils.loaders import frame_from_json

frames_bp = Blueprint('frames_bp', __name__)


@frames_bp.route('/check', methods=['POST'])
def check_frame():
    f = frame_from_json(request_data())
    return report_response(runners.frame_check(f))


@frames_bp.route('/points', methods=['POST'])
def frame_points():
    f = frame_from_json(request_data())
    return report_response(runners.frame_points(f))


@frames_bp.route('/separations', methods=['POST'])
def frame_separations():
    f = frame_from_json(request_data())
    return report_response(runners.frame_separations(f))
