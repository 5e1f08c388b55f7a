def pytest_terminal_summary(terminalreporter):
    mod = __import__('sys').modules.get('test_acceptance')
    lines = getattr(mod, 'RESULTS', None)
    if not lines:
        return
    terminalreporter.section('acceptance criteria')
    for line in lines:
        terminalreporter.write_line(line)
