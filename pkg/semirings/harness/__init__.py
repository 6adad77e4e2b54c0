"""File formats, the iso-free catalog and the verification suites."""
