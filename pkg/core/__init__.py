# Core: configuration, errors and shared enums
