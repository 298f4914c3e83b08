"""Human-readable rendering shared by the series types."""


def power(name, e):
    if e == 1:
        return name
    return f"{name}^{e}"


def monomial(factors):
    """Join ``(name, exponent)`` pairs, skipping zero exponents."""
    return " ".join(power(n, e) for n, e in factors if e)


def join_terms(terms):
    """Render ``[(coeff, monomial_string), ...]`` already in display order."""
    if not terms:
        return "0"
    out = []
    for idx, (c, mono) in enumerate(terms):
        neg = c < 0
        mag = -c if neg else c
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag} {mono}"
        if idx == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def var_names(prefix, dim):
    """``x`` when there is one variable, ``x1 .. xd`` otherwise."""
    if dim == 1:
        return [prefix]
    return [f"{prefix}{i}" for i in range(1, dim + 1)]
