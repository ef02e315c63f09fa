from datetime import datetime

from app import db


class VerificationRun(db.Model):
    __tablename__ = 'relatorios'
    id = db.Column(db.Integer, primary_key=True)
    command = db.Column(db.String(80), nullable=False)
    seed = db.Column(db.Integer, nullable=False, default=0)
    max_size = db.Column(db.Integer, nullable=False)
    passed = db.Column(db.Boolean, nullable=False)
    payload = db.Column(db.JSON, nullable=False)
    created_at = db.Column(db.DateTime, nullable=False, default=datetime.utcnow)

    def to_dict(self, full=False):
        data = {
            'id': self.id,
            'command': self.command,
            'seed': self.seed,
            'max_size': self.max_size,
            'passed': self.passed,
            'created_at': self.created_at.isoformat() if self.created_at else None
        }
        if full:
            data['payload'] = self.payload
        return data
