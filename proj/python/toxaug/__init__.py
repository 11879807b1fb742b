"""Corpus chunking, toxicity scoring, augmentation strategies and evaluation metrics."""

try:
    from ._toxaug import *  # noqa: F401,F403
    from ._toxaug import __version__  # noqa: F401
except ImportError:  # running against a build tree, module next to the package
    from _toxaug import *  # noqa: F401,F403
    from _toxaug import __version__  # noqa: F401
