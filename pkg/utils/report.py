import json
from dataclasses import dataclass, field

PASS, FAIL, NOTE = 'pass', 'fail', 'note'


@dataclass
class CheckRecord:
    name: str
    status: str
    witness: object = None
    anchor: str = ''

    @property
    def passed(self):
        return self.status != FAIL

    def to_dict(self):
        return {'name': self.name, 'status': self.status,
                'witness': self.witness, 'anchor': self.anchor}


@dataclass
class Report:
    """Output of one command: the computed result plus its check records."""

    command: str
    records: list = field(default_factory=list)
    result: dict = None
    timing: dict = None

    def check(self, name, passed, witness, anchor):
        if not anchor:
            raise ValueError(f'check {name!r} sem referência')
        self.records.append(CheckRecord(name, PASS if passed else FAIL, witness, anchor))
        return passed

    def note(self, name, witness, anchor):
        """A finding worth reporting that does not fail the run."""
        if not anchor:
            raise ValueError(f'nota {name!r} sem referência')
        self.records.append(CheckRecord(name, NOTE, witness, anchor))

    @property
    def passed(self):
        return all(r.passed for r in self.records)

    def to_dict(self):
        data = {'command': self.command, 'passed': self.passed,
                'records': [r.to_dict() for r in self.records]}
        if self.result is not None:
            data['result'] = self.result
        if self.timing is not None:
            data['timing'] = self.timing
        return data

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False, default=str)

    def to_text(self):
        lines = [f'{self.command}: {"ok" if self.passed else "FALHOU"}']
        for r in self.records:
            mark = {PASS: 'ok ', FAIL: 'ERR', NOTE: 'obs'}[r.status]
            line = f'  [{mark}] {r.name}'
            if r.anchor:
                line += f' ({r.anchor})'
            if r.status != PASS and r.witness is not None:
                line += f': {json.dumps(r.witness, ensure_ascii=False, default=str)}'
            lines.append(line)
        if self.timing:
            lines.append(f'  tempo: {self.timing}')
        return '\n'.join(lines)
