_base_ = ['rainbow_base.py']

n = 6
r = 3
m = '1-3'
