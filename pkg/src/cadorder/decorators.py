_pending_heuristics = []
def heuristic(obj):
    """Register a Heuristic subclass; the factory names it in spinal-case"""
    _pending_heuristics.append(obj)
    return obj
