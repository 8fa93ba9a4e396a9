// Checks live in tests/acceptance.rs.
