"""Exceptions raised by the verifiers.

Every error carries a JSON payload so the HTTP layer and the command line can
report it the same way: ``{'erro': <mensagem>, 'tipo': <classe>, ...}``.
"""


class VerificationError(Exception):
    status_code = 400

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details

    def payload(self):
        return {'erro': str(self), 'tipo': type(self).__name__, **self.details}


class PreconditionError(VerificationError):
    pass


class ParseError(VerificationError):
    def __init__(self, path, position, reason):
        super().__init__(f'Erro de leitura em {path} ({position}): {reason}',
                         path=str(path), position=position)


class BoundExceeded(VerificationError):
    status_code = 413


class TooLarge(BoundExceeded):
    def __init__(self, what, size, bound):
        super().__init__(f'{what} grande demais: {size} > limite {bound}',
                         size=size, bound=bound)


# order-core
class NotReflexive(VerificationError):
    def __init__(self, i):
        super().__init__(f'Relação não reflexiva em {i}', triple=[i])


class NotAntisymmetric(VerificationError):
    def __init__(self, i, j):
        super().__init__(f'Relação não antissimétrica em ({i}, {j})', triple=[i, j])


class NotTransitive(VerificationError):
    def __init__(self, i, j, k):
        super().__init__(f'Relação não transitiva em ({i}, {j}, {k})', triple=[i, j, k])


# frame-core
class NotALattice(VerificationError):
    def __init__(self, a, b, operation):
        super().__init__(f'Sem {operation} para ({a}, {b})', pair=[a, b], operation=operation)


class NotDistributive(VerificationError):
    def __init__(self, a, x, y):
        super().__init__(f'Lei distributiva falha em ({a}, {x}, {y})', triple=[a, x, y])


class NotABase(VerificationError):
    def __init__(self, element):
        super().__init__(f'Não é base: {element} não é o join dos básicos abaixo dele',
                         element=element)


class CrossCheckMismatch(VerificationError):
    def __init__(self, counts):
        super().__init__(f'Descrições de pontos divergem: {counts}', counts=counts)


class NotAFrameMorphism(VerificationError):
    def __init__(self, law, witness):
        super().__init__(f'Não é morfismo de frames ({law}): {witness}',
                         law=law, witness=witness)


# nuclei
class NotMonotone(VerificationError):
    def __init__(self, a, b):
        super().__init__(f'Mapa não monótono em ({a}, {b})', pair=[a, b])


class NotInflationary(VerificationError):
    def __init__(self, a):
        super().__init__(f'Mapa não inflacionário em {a}', element=a)


class NotPrenucleus(VerificationError):
    def __init__(self, a, b):
        super().__init__(f'Não é pré-núcleo: falha em ({a}, {b})', pair=[a, b])


class NotNucleus(VerificationError):
    def __init__(self, axiom, witness=None):
        super().__init__(f'Não é núcleo: axioma {axiom} violado', axiom=axiom,
                         witness=witness)


# nonarch
class NotNonArch(VerificationError):
    def __init__(self, pair):
        super().__init__(f'Base não é não-arquimediana: par {pair}', pair=list(pair))


class NotChainClosed(VerificationError):
    def __init__(self, element):
        super().__init__(f'Base não é fechada por supremos de cadeias: falta {element}',
                         element=element)


class NoNontrivialDecomposition(VerificationError):
    def __init__(self, element):
        super().__init__(f'Básico {element} não admite decomposição não trivial',
                         element=element)


# tree-topology
class InvalidTree(VerificationError):
    pass


class NotOpen(VerificationError):
    def __init__(self, mask):
        super().__init__(f'Conjunto de ramos {mask} não é aberto', mask=mask)


class NotTreeBase(VerificationError):
    pass


class NotMaximalChain(VerificationError):
    def __init__(self, mask):
        super().__init__(f'Cadeia {mask} não é maximal', mask=mask)


# padic
class PrimeMismatch(VerificationError):
    def __init__(self, p, q):
        super().__init__(f'Primos diferentes: {p} e {q}', primes=[p, q])


class NotRepresentable(VerificationError):
    def __init__(self, value, p):
        super().__init__(f'{value} não tem denominador potência de {p}', value=str(value), p=p)
