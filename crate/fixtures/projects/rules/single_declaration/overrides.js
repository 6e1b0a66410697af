var settings = { debug: true };
