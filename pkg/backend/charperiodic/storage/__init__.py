# Report schemas, grid serialization and problem files
