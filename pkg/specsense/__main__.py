#!/usr/bin/env python3
"""
specsense主入口点
支持直接运行: python -m specsense
"""

import sys

from .cli import main

if __name__ == "__main__":
    sys.exit(main())
