"""
Testes de integração da bancada.

Este pacote contém testes que executam os exemplos do corpus de ponta a ponta,
passando pelo analisador, pelo verificador de tipos, pela semântica e pelas
traduções.
"""
