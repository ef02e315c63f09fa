# routes package
from flask import current_app, request

from utils.errors import ParseError


def request_data():
    """JSON body of the request; anything but an object is a parse error."""
    data = request.get_json(silent=True)
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ParseError('<corpo>', 0, 'esperado um objeto JSON')
    return data


def report_response(report, status=200):
    return current_app.response_class(report.to_json(), mimetype='application/json'), status
