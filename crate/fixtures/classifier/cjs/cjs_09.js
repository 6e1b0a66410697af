var importer = require('./importer');
var exporter = require('./exporter');
importer.run(exporter);
