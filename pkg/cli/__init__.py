# -*- coding: utf-8 -*-
from .app import build_parser, main
