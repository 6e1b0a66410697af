(function() {
  define(['a'], function(a) {
    return a;
  });
})();
