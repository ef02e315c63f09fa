"""Command line for the frame, nucleus, tree and p-adic verifiers.

Exit codes: 0 when every check passes, 1 when a check fails (the report is
still written) and 2 for unreadable input, exceeded bounds or unmet
preconditions.
"""
import functools
import logging

import click

from config import Config
from models.tree_model import branch_space
from utils import runners
from utils.dot_export import tree_dot
from utils.errors import VerificationError
from utils.loaders import (base_from_json, frame_from_json, load_json,
                           nucleus_from_json, tree_from_json)

LOGGER = logging.getLogger(__name__)


class CommandError(click.ClickException):
    exit_code = 2


def handles_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except VerificationError as e:
            LOGGER.debug('command failed: %s', e.payload())
            raise CommandError(str(e))
    return wrapper


def output_options(fn):
    fn = click.option('--format', 'fmt', type=click.Choice(['json', 'text', 'dot']),
                      default='json', show_default=True)(fn)
    fn = click.option('--output', '-o', type=click.File('w', encoding='utf-8'), default='-',
                      help='Arquivo de saída (padrão: saída padrão).')(fn)
    return fn


def frame_input(fn):
    fn = click.argument('source', type=click.File('r', encoding='utf-8'), required=False)(fn)
    fn = click.option('--generate', type=click.Choice(['powerset', 'chain']),
                      help='Gera o frame em vez de ler SOURCE.')(fn)
    fn = click.option('-n', 'size', type=int, default=2, show_default=True)(fn)
    return fn


def tree_input(fn):
    fn = click.argument('source', type=click.File('r', encoding='utf-8'), required=False)(fn)
    fn = click.option('--generate', type=click.Choice(['cantor', 'baire', 'koenig', 'zp']),
                      help='Gera a árvore em vez de ler SOURCE.')(fn)
    fn = click.option('--depth', '-d', type=int, default=2, show_default=True)(fn)
    fn = click.option('--width', '-w', type=int, default=2, show_default=True)(fn)
    fn = click.option('-p', 'prime', type=int, default=2, show_default=True)(fn)
    return fn


def _frame_data(source, generate, size, missing):
    if generate:
        return {'generate': generate, 'n': size}
    if source is None:
        raise click.UsageError(missing)
    return load_json(source)


def _frame(source, generate, size, missing='Informe SOURCE ou --generate'):
    """(frame, base) from a JSON file or a generator."""
    data = _frame_data(source, generate, size, missing)
    path = getattr(source, 'name', '<gerado>')
    f = frame_from_json(data, path)
    return f, base_from_json(f, data, path)


def _tree(source, generate, depth, width, prime):
    if generate:
        return tree_from_json({'generate': generate, 'depth': depth, 'width': width,
                               'p': prime})
    if source is None:
        raise click.UsageError('Informe SOURCE ou --generate')
    return tree_from_json(load_json(source), source.name)


def emit(report, fmt, output, dot=None):
    if fmt == 'dot':
        if dot is None:
            raise click.UsageError('Formato dot indisponível para este comando')
        text = dot
    elif fmt == 'text':
        text = report.to_text()
    else:
        text = report.to_json()
    click.echo(text, file=output)
    raise click.exceptions.Exit(0 if report.passed else 1)


@click.group()
@click.option('--verbose', '-v', is_flag=True, help='Registra mensagens de depuração.')
def cli(verbose):
    """Verificadores de frames, núcleos, árvores e bolas p-ádicas."""
    logging.basicConfig(level=logging.DEBUG if verbose else Config.LOG_LEVEL,
                        format='%(asctime)s %(levelname)s %(name)s: %(message)s')


# -- frame ---------------------------------------------------------------------

@cli.group()
def frame():
    """Leis de frame, pontos e separação."""


@frame.command('check')
@frame_input
@output_options
@handles_errors
def frame_check(source, generate, size, fmt, output):
    f, _ = _frame(source, generate, size)
    emit(runners.frame_check(f), fmt, output, runners.hasse_of(f))


@frame.command('points')
@frame_input
@output_options
@handles_errors
def frame_points(source, generate, size, fmt, output):
    f, _ = _frame(source, generate, size)
    emit(runners.frame_points(f), fmt, output, runners.hasse_of(f))


@frame.command('separations')
@frame_input
@output_options
@handles_errors
def frame_separations(source, generate, size, fmt, output):
    f, _ = _frame(source, generate, size)
    emit(runners.frame_separations(f), fmt, output, runners.hasse_of(f))


# -- nonarch -------------------------------------------------------------------

@cli.group()
def nonarch():
    """Bases não-arquimedianas."""


@nonarch.command('check')
@frame_input
@output_options
@handles_errors
def nonarch_check(source, generate, size, fmt, output):
    f, base = _frame(source, generate, size)
    emit(runners.nonarch_check(f, base), fmt, output, runners.hasse_of(f))


@nonarch.command('tree-base')
@frame_input
@output_options
@handles_errors
def nonarch_tree_base(source, generate, size, fmt, output):
    f, base = _frame(source, generate, size)
    report = runners.nonarch_tree_base(f, base)
    emit(report, fmt, output, report.result['dot'])


@nonarch.command('decompose')
@frame_input
@click.option('--element', '-e', required=True, help='Rótulo do elemento a decompor.')
@output_options
@handles_errors
def nonarch_decompose(source, generate, size, element, fmt, output):
    f, base = _frame(source, generate, size)
    emit(runners.nonarch_decompose(f, base, element), fmt, output)


# -- nuclei --------------------------------------------------------------------

@cli.group()
def nuclei():
    """Núcleos, quocientes e o frame de núcleos."""


@nuclei.command('enumerate')
@frame_input
@click.option('--bound', type=int, default=None, help='Tamanho máximo do frame.')
@output_options
@handles_errors
def nuclei_enumerate(source, generate, size, bound, fmt, output):
    f, _ = _frame(source, generate, size)
    emit(runners.nuclei_enumerate(f, bound), fmt, output)


@nuclei.command('quotient')
@frame_input
@click.option('--nucleus', 'nucleus_file', type=click.File('r', encoding='utf-8'),
              required=True, help='Tabela {"table": [[a, j(a)], ...]}.')
@output_options
@handles_errors
def nuclei_quotient(source, generate, size, nucleus_file, fmt, output):
    f, _ = _frame(source, generate, size)
    j = nucleus_from_json(f, load_json(nucleus_file), nucleus_file.name)
    emit(runners.nuclei_quotient(f, j), fmt, output)


@nuclei.command('close')
@frame_input
@click.option('--prenucleus', 'table_file', type=click.File('r', encoding='utf-8'),
              required=True, help='Tabela {"table": [[a, c(a)], ...]}.')
@output_options
@handles_errors
def nuclei_close(source, generate, size, table_file, fmt, output):
    f, _ = _frame(source, generate, size)
    c = nucleus_from_json(f, load_json(table_file), table_file.name)
    emit(runners.nuclei_close(f, c), fmt, output)


@nuclei.command('verify-quot')
@frame_input
@click.option('--bound', type=int, default=None, help='Tamanho máximo do frame.')
@output_options
@handles_errors
def nuclei_verify_quot(source, generate, size, bound, fmt, output):
    f, base = _frame(source, generate, size)
    emit(runners.nuclei_verify_quot(f, base, bound), fmt, output)


# -- tree ----------------------------------------------------------------------

@cli.group()
def tree():
    """Espaços de ramos, derivada de Cantor-Bendixson e núcleos de árvore."""


@tree.command('branches')
@tree_input
@output_options
@handles_errors
def tree_branches(source, generate, depth, width, prime, fmt, output):
    t = _tree(source, generate, depth, width, prime)
    emit(runners.tree_branches(t), fmt, output, tree_dot(t))


@tree.command('rank')
@tree_input
@output_options
@handles_errors
def tree_rank(source, generate, depth, width, prime, fmt, output):
    t = _tree(source, generate, depth, width, prime)
    emit(runners.tree_rank(t), fmt, output, tree_dot(t))


@tree.command('ker')
@tree_input
@output_options
@handles_errors
def tree_ker(source, generate, depth, width, prime, fmt, output):
    t = _tree(source, generate, depth, width, prime)
    emit(runners.tree_ker(t), fmt, output, tree_dot(t))


def _opens_nucleus(t, nucleus_file):
    if nucleus_file is None:
        return None
    return nucleus_from_json(branch_space(t).opens_frame, load_json(nucleus_file),
                             nucleus_file.name)


@tree.command('ler')
@tree_input
@click.option('--nucleus', 'nucleus_file', type=click.File('r', encoding='utf-8'),
              help='Núcleo sobre os abertos de ramos (padrão: identidade).')
@output_options
@handles_errors
def tree_ler(source, generate, depth, width, prime, nucleus_file, fmt, output):
    t = _tree(source, generate, depth, width, prime)
    emit(runners.tree_ler(t, _opens_nucleus(t, nucleus_file)), fmt, output, tree_dot(t))


@tree.command('gbi')
@tree_input
@click.option('--nucleus', 'nucleus_file', type=click.File('r', encoding='utf-8'),
              help='Núcleo sobre os abertos de ramos (padrão: identidade).')
@output_options
@handles_errors
def tree_gbi(source, generate, depth, width, prime, nucleus_file, fmt, output):
    t = _tree(source, generate, depth, width, prime)
    emit(runners.tree_gbi(t, _opens_nucleus(t, nucleus_file)), fmt, output, tree_dot(t))


@tree.command('eta')
@click.option('--frame', 'frame_file', type=click.File('r', encoding='utf-8'),
              help='Frame com base não arquimediana (JSON).')
@click.option('--generate', type=click.Choice(['powerset', 'chain']),
              help='Gera o frame em vez de ler --frame.')
@click.option('-n', 'size', type=int, default=2, show_default=True)
@output_options
@handles_errors
def tree_eta(frame_file, generate, size, fmt, output):
    """Apresenta um frame com base em árvore como quociente dos abertos de ramos."""
    f, base = _frame(frame_file, generate, size, missing='Informe --frame ou --generate')
    emit(runners.tree_eta(f, base), fmt, output, runners.hasse_of(f))


# -- padic ---------------------------------------------------------------------

@cli.group()
def padic():
    """Bolas p-ádicas e a árvore de Z_p."""


@padic.command('tree')
@click.option('-p', 'prime', type=int, required=True)
@click.option('--depth', '-d', type=int, required=True)
@click.option('--vmin', type=int, default=None,
              help='Gera a floresta de p^vmin Z_p em vez de Z_p.')
@output_options
@handles_errors
def padic_tree(prime, depth, vmin, fmt, output):
    if vmin is None:
        report = runners.padic_tree(prime, depth)
        emit(report, fmt, output, report.result['dot'])
    else:
        emit(runners.padic_qp_tree(prime, vmin, depth), fmt, output)


@padic.command('verify')
@click.option('-p', 'prime', type=int, required=True)
@click.option('--depth', '-d', type=int, required=True)
@output_options
@handles_errors
def padic_verify(prime, depth, fmt, output):
    emit(runners.padic_verify(prime, depth), fmt, output)


@padic.command('trichotomy')
@click.argument('first')
@click.argument('second')
@output_options
@handles_errors
def padic_trichotomy(first, second, fmt, output):
    """Compara duas bolas escritas como p^k*Zp+c."""
    emit(runners.padic_trichotomy(first, second), fmt, output)


# -- suite ---------------------------------------------------------------------

@cli.command('verify-paper')
@click.option('--max-size', type=int, default=None,
              help='Tamanho máximo das instâncias do corpus.')
@click.option('--seed', type=int, default=0, show_default=True)
@click.option('--jobs', '-j', type=int, default=1, show_default=True)
@click.option('--timing', is_flag=True, help='Inclui tempos no relatório.')
@output_options
@handles_errors
def verify_paper(max_size, seed, jobs, timing, fmt, output):
    """Roda todos os verificadores sobre o corpus determinístico."""
    if max_size is not None and max_size < 1:
        raise click.BadParameter('deve ser positivo', param_hint='--max-size')
    emit(runners.verify_paper(seed, max_size, jobs, timing), fmt, output)


if __name__ == '__main__':
    cli()
