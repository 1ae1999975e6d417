"""Stand alone applications built on terracini."""
