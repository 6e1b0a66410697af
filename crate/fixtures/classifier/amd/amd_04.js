require(['app/main'], function(main) {
  main.start();
});
