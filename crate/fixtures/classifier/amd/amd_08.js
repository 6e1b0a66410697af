define([], function() {
  var module = { exports: {} };
  return module.exports;
});
