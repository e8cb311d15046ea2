# Core: settings, logging, errors, worker pools
