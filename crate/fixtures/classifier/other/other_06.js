var importance = 1;
var exporter = { exports: 2 };
console.log(importance, exporter.exports);
