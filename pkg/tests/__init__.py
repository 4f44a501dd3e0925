# __init__.py
# Alexandre Jutras, 2019-09-13
# Copyright (c) Element AI Inc. All rights not expressly granted hereunder are reserved.
