# -*- coding: utf-8 -*-
"""
Seeded sampling, the property harness for atlases and fault injection.
"""
