import json

from flask import Blueprint, current_app, jsonify

from app import db
from models.report_model import VerificationRun
from routes import request_data
from utils.corpus import DEFAULT_MAX_SIZE
from utils.pagination import paginate_query
from utils.runners import verify_paper

reports_bp = Blueprint('reports_bp', __name__)


@reports_bp.route('/', methods=['POST'])
def create_report():
    data = request_data()
    seed = data.get('seed', 0)
    max_size = data.get('max_size', DEFAULT_MAX_SIZE)
    if not isinstance(seed, int) or isinstance(seed, bool):
        return jsonify({'erro': 'Campo seed deve ser um inteiro'}), 400
    if not isinstance(max_size, int) or isinstance(max_size, bool) or max_size < 1:
        return jsonify({'erro': 'Campo max_size deve ser um inteiro positivo'}), 400

    report = verify_paper(seed, max_size)
    run = VerificationRun(
        command=report.command,
        seed=seed,
        max_size=max_size,
        passed=report.passed,
        payload=json.loads(report.to_json())
    )
    db.session.add(run)
    db.session.commit()
    current_app.logger.info('relatório %d gravado (passed=%s)', run.id, run.passed)
    return jsonify(run.to_dict(full=True)), 201


@reports_bp.route('/<int:run_id>', methods=['GET'])
def get_report(run_id):
    run = db.get_or_404(VerificationRun, run_id)
    return jsonify(run.to_dict(full=True)), 200


@reports_bp.route('/', methods=['GET'])
def list_reports():
    query = VerificationRun.query.order_by(VerificationRun.id)
    return jsonify(paginate_query(query, lambda r: r.to_dict())), 200
