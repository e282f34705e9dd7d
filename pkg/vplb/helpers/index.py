def split_node(k, n):
    """
    Translate a flat node index k (element-major, n nodes per element)
    into the pair (element, local node).
    """
    return divmod(int(k), n)
