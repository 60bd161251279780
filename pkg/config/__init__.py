# -*- coding: utf-8 -*-
from .settings import *
