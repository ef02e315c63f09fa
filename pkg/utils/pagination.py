from flask import request

DEFAULT_PAGE_SIZE = 10
MAX_PAGE_SIZE = 100


def page_args():
    """(pagina, tamanho) from the query string; bad values fall back to the defaults."""
    try:
        pagina = int(request.args.get('pagina', 1))
        tamanho = int(request.args.get('tamanho', DEFAULT_PAGE_SIZE))
    except ValueError:
        return 1, DEFAULT_PAGE_SIZE
    if pagina < 1:
        pagina = 1
    if tamanho < 1:
        tamanho = DEFAULT_PAGE_SIZE
    return pagina, min(tamanho, MAX_PAGE_SIZE)


def paginate_query(query, item_to_dict):
    pagina, tamanho = page_args()
    total = query.count()
    items = query.offset((pagina - 1) * tamanho).limit(tamanho).all()
    return {
        'dados': [item_to_dict(i) for i in items],
        'pagina': pagina,
        'tamanho': tamanho,
        'total': total,
        'paginas': (total + tamanho - 1) // tamanho
    }
