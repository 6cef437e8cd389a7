"""
Name conversions for registered classes and user supplied names.
"""

import re


def spinalcase(text: str) -> str:
    """
    Convert a class or flag name to spinal-case (kebab-case).

    Examples:
        GreedySotd -> greedy-sotd
        VirtualBest -> virtual-best
        greedy_sotd -> greedy-sotd
    """
    if not text:
        return text
    text = re.sub('([a-z0-9])([A-Z])', r'\1-\2', text.replace('_', '-'))
    return re.sub('-+', '-', text.lower()).strip('-')
