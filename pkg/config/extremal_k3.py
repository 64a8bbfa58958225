_base_ = ['rainbow_base.py']

pattern = 'K3'
mode = 'rainbow'
n = '3-7'
