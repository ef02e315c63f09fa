from flask import Flask, jsonify
from flask_sqlalchemy import SQLAlchemy
from config import Config
from dotenv import load_dotenv
import os

from utils.errors import VerificationError

load_dotenv()

db = SQLAlchemy()


def create_app(config=None):
    app = Flask(__name__)
    app.config.from_object(Config)
    if config:
        app.config.update(config)
    app.json.ensure_ascii = False
    app.json.sort_keys = False
    db.init_app(app)
    with app.app_context():
        from models import report_model  # noqa: F401
        db.create_all()
    # register blueprints
    from routes.frames import frames_bp
    from routes.nonarch import nonarch_bp
    from routes.nuclei import nuclei_bp
    from routes.trees import trees_bp
    from routes.padic import padic_bp
    from routes.reports import reports_bp

    app.register_blueprint(frames_bp, url_prefix='/frames')
    app.register_blueprint(nonarch_bp, url_prefix='/nonarch')
    app.register_blueprint(nuclei_bp, url_prefix='/nuclei')
    app.register_blueprint(trees_bp, url_prefix='/trees')
    app.register_blueprint(padic_bp, url_prefix='/padic')
    app.register_blueprint(reports_bp, url_prefix='/relatorios')

    @app.errorhandler(VerificationError)
    def verification_error(e):
        app.logger.info('%s: %s', type(e).__name__, e)
        return jsonify(e.payload()), e.status_code

    @app.route('/')
    def index():
        return jsonify({'mensagem': 'API de verificação de frames não-arquimedianos funcionando'}), 200

    return app


if __name__ == '__main__':
    # models bind to the importable module's db, not __main__'s
    from app import create_app as factory
    app = factory()
    debug = os.getenv('FLASK_DEBUG', '1') == '1'
    app.run(host='0.0.0.0', port=5000, debug=debug)
