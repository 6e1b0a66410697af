var settings = { debug: false };
