from ._idcp import *  # noqa: F401,F403
