"""Capa de dominio: tipos de valor puros"""
